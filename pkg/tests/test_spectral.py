"""Indicial spectrum: closed forms, root identities, discretized oracle."""

import numpy as np
import pytest

from permono import spectral
from permono.errors import ResolutionTooLowError


def test_kuwabara_examples():
    assert spectral.kuwabara_eigenvalues(0, 2) == [(0, 0.0, 1), (2, 2.0, 3), (4, 6.0, 5)]
    l, lam, mult = spectral.kuwabara_eigenvalues(2, 0)[0]
    assert (l, lam, mult) == (2, 1.0, 3)
    l, lam, mult = spectral.kuwabara_eigenvalues(1, 0)[0]
    assert (l, lam, mult) == (1, 0.5, 2)
    with pytest.raises(ValueError):
        spectral.kuwabara_eigenvalues(1, -1)


def test_operator_spectrum_entries():
    s0 = spectral.operator_L_spectrum(0, 0).entries[0]
    assert (s0.lam, s0.gamma_plus, s0.gamma_minus) == (0.0, 0.0, -1.0)
    s1 = spectral.operator_L_spectrum(1, 0).entries[0]
    assert (s1.lam, s1.gamma_plus, s1.gamma_minus) == (0.75, 0.5, -1.5)
    assert s1.multiplicity == 2


def test_root_identities_exact():
    import math

    for m in range(-6, 7):
        for e in spectral.operator_L_spectrum(m, 20).entries:
            assert e.gamma_plus == e.j + abs(m) / 2.0
            assert e.gamma_minus == -e.j - 1.0 - abs(m) / 2.0
            assert e.gamma_plus + e.gamma_minus == -1.0
            assert e.gamma_plus * e.gamma_minus == -e.lam
            assert e.multiplicity == 2 * e.j + abs(m) + 1
            # closed-form root: -1/2 + sqrt(1/4 + l(l+2)/4) = l/2
            assert -0.5 + math.sqrt(0.25 + e.lam) == e.l / 2.0


def test_is_exceptional():
    q = spectral.is_exceptional(0.0, 0)
    assert q.is_exceptional and q.nearest == 0.0
    q = spectral.is_exceptional(1.0, 2)
    assert q.is_exceptional and q.nearest == 1.0  # gamma^+ at j = 0
    for delta in np.linspace(-1.5 + 1e-6, 0.5 - 1e-6, 41):
        assert not spectral.is_exceptional(float(delta), 1).is_exceptional
    with pytest.raises(ValueError):
        spectral.is_exceptional(40.0, 1, j_max=4)


def test_interval_free_of_weights():
    for m in (1, 2, 3, 4, 5, 6):
        lo, hi = -1.0 - m / 2.0, m / 2.0
        for w in spectral.operator_L_spectrum(m, 40).weights():
            assert not (lo < w < hi)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_oracle_matches_formula(m):
    l_cut = abs(m) + 4
    osp = spectral.sphere_laplacian_oracle(m, l_cut)
    expected = spectral.kuwabara_eigenvalues(m, 2)
    assert len(osp.clusters) >= 3
    for (l, lam, mult), cl in zip(expected, osp.clusters[:3]):
        if lam == 0.0:
            assert abs(cl.center) <= 1e-6
        else:
            assert abs(cl.center - lam) / lam <= 0.01
        assert cl.size == mult


def test_oracle_improves_under_refinement():
    lam = spectral.kuwabara_eigenvalues(2, 1)[1][1]  # l = 4 eigenvalue
    errs = []
    for n_phi in (200, 400, 800):
        osp = spectral.sphere_laplacian_oracle(2, 6, n_phi=n_phi)
        errs.append(abs(osp.clusters[1].center - lam))
    assert errs[2] < errs[1] < errs[0]


def test_oracle_negative_charge_symmetric():
    a = spectral.sphere_laplacian_oracle(2, 4)
    b = spectral.sphere_laplacian_oracle(-2, 4)
    assert np.allclose(a.eigenvalues, b.eigenvalues)


def test_oracle_diagonal_sector_complete():
    # m = 0: the indexed family l = 2j IS the full round-sphere spectrum
    # j(j+1); the oracle finds no clusters outside it.
    osp = spectral.sphere_laplacian_oracle(0, 6)
    indexed = [lam for (_l, lam, _mult) in spectral.kuwabara_eigenvalues(0, 3)]
    for cl in osp.clusters:
        assert min(abs(cl.center - lam) for lam in indexed) <= 0.05


def test_oracle_guards():
    with pytest.raises(ValueError):
        spectral.sphere_laplacian_oracle(1, 2)  # parity mismatch
    with pytest.raises(ValueError):
        spectral.sphere_laplacian_oracle(0, 10)  # beyond desk scale
    with pytest.raises(ResolutionTooLowError):
        spectral.sphere_laplacian_oracle(3, 7, n_phi=16)
