"""Periodic Green's function: regimes, certified bounds, asymptotic laws."""

import math

import numpy as np
import pytest

from permono import green
from permono.errors import OutOfRegimeError, SingularPointError, ToleranceUnreachableError
from permono.green import ORIGIN, CirclePoint3, Regime

TWO_PI = 2.0 * math.pi


def test_circle_point_normalization_and_distance():
    p = CirclePoint3(1.0 + 2.0j, 7.0)
    assert 0.0 <= p.t < TWO_PI
    assert p.t == pytest.approx(7.0 - TWO_PI)
    a = CirclePoint3(0.0, 0.1)
    b = CirclePoint3(0.0, TWO_PI - 0.1)
    assert a.distance(b) == pytest.approx(0.2, abs=1e-15)
    assert a.distance(a) == 0.0


def test_image_sum_even_in_t_exactly():
    # Pairing +/-m makes the partial sum bitwise even in the circle offset.
    # Bitwise equality needs the mod-2pi storage round trip of -t to be exact,
    # which holds when fl(2pi) - t is exact (t in the same binade works).
    for t in (0.5, 1.0, 2.0, 3.0):
        v1 = green.green_image_sum(CirclePoint3(0.7 + 0.2j, t), ORIGIN, 500)
        v2 = green.green_image_sum(CirclePoint3(0.7 + 0.2j, -t), ORIGIN, 500)
        assert v1.value == v2.value
        assert v1.grad[2] == -v2.grad[2]
    # generic t: the round trip may cost one ulp of the circle offset
    for t in (0.3, 1.7):
        v1 = green.green_image_sum(CirclePoint3(0.7 + 0.2j, t), ORIGIN, 500)
        v2 = green.green_image_sum(CirclePoint3(0.7 + 0.2j, -t), ORIGIN, 500)
        assert v1.value == pytest.approx(v2.value, abs=5e-16)


def test_image_sum_rotation_invariance():
    r, t, M = 1.3, 0.8, 2000
    base = green.green_image_sum(CirclePoint3(r, t), ORIGIN, M).value
    for th in (0.5, 2.0, 4.0):
        v = green.green_image_sum(CirclePoint3(r * np.exp(1j * th), t), ORIGIN, M).value
        assert abs(v - base) <= 1e-13


def test_image_sum_tail_bound_is_sound():
    # empirical truncation error (vs a 10x longer sum) never exceeds the bound
    for (r, t) in [(1.0, 0.5), (0.3, 2.0), (2.5, 3.0), (0.05, 0.02)]:
        p = CirclePoint3(complex(r), t)
        for M in (100, 1000, 10000):
            g = green.green_image_sum(p, ORIGIN, M)
            ref = green.green_image_sum(p, ORIGIN, 10 * M)
            assert abs(g.value - ref.value) <= g.trunc_bound
        g4 = green.green_image_sum(p, ORIGIN, 10**4)
        g8 = green.green_image_sum(p, ORIGIN, 2 * 10**4)
        assert abs(g4.value - g8.value) <= g4.trunc_bound


def test_cross_regime_agreement_and_gradients():
    p = CirclePoint3(1.0, 0.5)
    gi = green.green_image_sum(p, ORIGIN, 200000)
    gf = green.green_fourier_bessel(p, ORIGIN, 60)
    assert gi.trunc_bound <= 5e-11 and gf.trunc_bound <= 5e-11
    assert abs(gi.value - gf.value) <= 1e-10
    assert np.max(np.abs(gi.grad - gf.grad)) <= 1e-9


def test_fourier_bessel_tail_bound_is_sound():
    for (r, t) in [(0.6, 0.1), (1.0, 2.0), (3.0, 1.0)]:
        p = CirclePoint3(complex(r), t)
        g = green.green_fourier_bessel(p, ORIGIN, 8)
        ref = green.green_fourier_bessel(p, ORIGIN, 200)
        assert abs(g.value - ref.value) <= g.trunc_bound


def test_log_asymptotics_with_decaying_constant():
    # e^r |G - log(r)/2pi| bounded by a single constant <= 10, non-increasing
    vals = []
    for r in range(2, 11):
        g = green.green_fourier_bessel(CirclePoint3(float(r), 0.0), ORIGIN, 80)
        vals.append(math.exp(r) * abs(g.value - math.log(r) / TWO_PI))
    assert max(vals) <= 10.0
    for a, b in zip(vals, vals[1:]):
        assert b <= 1.05 * a


def test_t_average_recovers_log():
    # (1/2pi) int G(r, t) dt = log(r)/2pi: trapezoid over the circle modes
    r = 1.5
    n = 256
    ts = np.arange(n) * TWO_PI / n
    avg = np.mean([
        green.green_fourier_bessel(CirclePoint3(r, t), ORIGIN, 60).value for t in ts
    ])
    assert abs(avg - math.log(r) / TWO_PI) <= 1e-12


def test_multipole_residual_and_richardson_ratio():
    # t-axis residuals: quadratic model error with Richardson ratio ~ 1/4
    res = {}
    for rho in (0.2, 0.1, 0.05, 0.025):
        p = CirclePoint3(0.0, rho)
        gi = green.green_image_sum(p, ORIGIN, 30000)
        model = 0.5 * green.A0 - 0.5 / rho
        res[rho] = abs(gi.value - model)
        assert res[rho] / rho**2 <= green.C2_MULTIPOLE
    for hi, lo in [(0.2, 0.1), (0.1, 0.05), (0.05, 0.025)]:
        assert 0.2 <= res[lo] / res[hi] <= 0.3


def test_multipole_near_pole_agreement():
    rho = 0.01
    p = CirclePoint3(0.0, rho)
    gi = green.green_image_sum(p, ORIGIN, 20000)
    gm = green.green_multipole(p, ORIGIN)
    assert abs(gi.value - gm.value) <= green.C2_MULTIPOLE * 1e-4


def test_singular_part_dominates():
    # rho * G -> -1/2 as rho -> 0
    for rho in (1e-3, 1e-4):
        g = green.green_multipole(CirclePoint3(complex(rho), 0.0), ORIGIN)
        assert rho * g.value == pytest.approx(-0.5, abs=1e-2)


def test_multipole_domain_errors():
    with pytest.raises(OutOfRegimeError):
        green.green_multipole(CirclePoint3(2.0, 0.0), ORIGIN)
    with pytest.raises(SingularPointError):
        green.green_multipole(CirclePoint3(0.0, 0.0), ORIGIN)


def test_dispatcher_regime_selection():
    g = green.green_eval(CirclePoint3(5.0, 1.0), ORIGIN, tol=1e-10)
    assert g.regime is Regime.FOURIER_BESSEL
    g = green.green_eval(CirclePoint3(0.0, 1e-3), ORIGIN, tol=1e-5)
    assert g.regime is Regime.MULTIPOLE
    assert g.trunc_bound <= green.C2_MULTIPOLE * 1e-6
    g = green.green_eval(CirclePoint3(0.3, 2.0), ORIGIN, tol=1e-10)
    assert g.regime is Regime.IMAGE_SUM
    assert g.trunc_bound <= 1e-10
    # near the pole with tol below the model error: certified fallback
    g = green.green_eval(CirclePoint3(0.05, 0.0), ORIGIN, tol=1e-9)
    assert g.regime is Regime.IMAGE_SUM and g.trunc_bound <= 1e-9


def test_dispatcher_errors():
    with pytest.raises(SingularPointError):
        green.green_eval(CirclePoint3(0.0, 0.0), ORIGIN, 1e-8)
    with pytest.raises(ToleranceUnreachableError):
        green.green_eval(CirclePoint3(0.01, 0.0), ORIGIN, tol=1e-13)
    with pytest.raises(ValueError):
        green.green_eval(CirclePoint3(1.0, 0.0), ORIGIN, tol=-1.0)


def test_dispatcher_meets_tolerance_across_space():
    rng = np.random.default_rng(7)
    for _ in range(40):
        p = CirclePoint3(complex(rng.uniform(-4, 4), rng.uniform(-4, 4)), rng.uniform(0, TWO_PI))
        if p.distance(ORIGIN) < 1e-3:
            continue
        tol = 10.0 ** rng.uniform(-11, -5)
        g = green.green_eval(p, ORIGIN, tol)
        if g.regime is not Regime.MULTIPOLE:
            assert g.trunc_bound <= tol


def test_regime_overlap_consistency():
    # any two regimes agree within the sum of their bounds
    for (r, t) in [(0.6, 0.3), (1.0, 1.0), (2.0, 0.05)]:
        p = CirclePoint3(complex(r), t)
        gi = green.green_image_sum(p, ORIGIN, 50000)
        gf = green.green_fourier_bessel(p, ORIGIN, 120)
        assert abs(gi.value - gf.value) <= gi.trunc_bound + gf.trunc_bound
    p = CirclePoint3(complex(0.05), 0.05)
    gi = green.green_image_sum(p, ORIGIN, 50000)
    gm = green.green_multipole(p, ORIGIN)
    assert abs(gi.value - gm.value) <= gi.trunc_bound + gm.trunc_bound


def test_dt_vanishing_on_half_period_planes():
    for r in (1.0, 3.0):
        assert green.green_dt_zero_check(r) <= 1e-12
    # cross-regime: image-sum gradient at r = 0.5, t in {0, pi}
    g0 = green.green_image_sum(CirclePoint3(0.5, 0.0), ORIGIN, 50000)
    gpi = green.green_image_sum(CirclePoint3(0.5, math.pi), ORIGIN, 50000)
    assert abs(g0.grad[2]) <= 1e-10
    assert abs(gpi.grad[2]) <= 1e-10


def test_evenness_about_the_center():
    q = CirclePoint3(0.3 + 0.1j, 1.2)
    for s in (0.2, 0.9, 2.5):
        up = green.green_eval(CirclePoint3(1.5 + 0.4j, q.t + s), q, 1e-12)
        dn = green.green_eval(CirclePoint3(1.5 + 0.4j, q.t - s), q, 1e-12)
        assert abs(up.value - dn.value) <= 1e-12


def test_discrete_harmonicity_second_order():
    # 7-point Laplacian residual decreases at O(h^2) under mesh halving
    def lap(h):
        c = CirclePoint3(1.2 + 0.3j, 1.0)
        tol = 1e-13
        ctr = green.green_eval(c, ORIGIN, tol).value
        acc = -6.0 * ctr
        for dx, dy, dt in [(h, 0, 0), (-h, 0, 0), (0, h, 0), (0, -h, 0), (0, 0, h), (0, 0, -h)]:
            acc += green.green_eval(CirclePoint3(c.z + complex(dx, dy), c.t + dt), ORIGIN, tol).value
        return abs(acc) / h**2

    r1, r2 = lap(0.02), lap(0.01)
    slope = math.log2(r1 / r2)
    assert 1.8 <= slope <= 2.2


def test_batch_evaluation_matches_pointwise():
    pts = [CirclePoint3(complex(1.0 + 0.1 * i), 0.3 * i) for i in range(5)]
    batch = green.evaluate_batch(pts, ORIGIN, 1e-9)
    for p, g in zip(pts, batch):
        assert g.value == green.green_eval(p, ORIGIN, 1e-9).value
