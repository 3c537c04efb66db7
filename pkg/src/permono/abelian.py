"""Abelian monopole configurations on R^2 x S^1: signed sums of Dirac-type
terms over a vacuum pair (v, b), with field evaluation, the explicit radial
gauge in the exterior region, holonomy around circle fibers, large-distance
asymptotics of a translated center, the scaling action, and a grid residual
for the abelian Bogomolny equation curl(a) = grad(phi).

Conventions. Connections are written A = i(a_theta dtheta + a_t dt) with real
coefficients; FieldSample carries the real parts. The exterior radial gauge
fixes the half-integer holonomy shift alpha = 1/2 and is expressed in polar
coordinates centred at the term's own singularity, with the circle offset
reduced to (-pi, pi] (the gauge has a seam on the opposite half-period plane).
Euclidean terms contribute to the Higgs field only; their connection lives in
the four-dimensional lift (module hopf).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import green, specfn
from .errors import OutOfRegimeError, SingularPointError
from .green import ORIGIN, CirclePoint3, reduce_angle_signed

TWO_PI = 2.0 * math.pi


class Kind(enum.Enum):
    PERIODIC = "Periodic"
    EUCLIDEAN = "Euclidean"


@dataclass
class DiracTerm:
    center: CirclePoint3
    charge: int
    kind: Kind = Kind.PERIODIC

    def __post_init__(self):
        if self.charge == 0:
            raise ValueError("Dirac term must carry nonzero charge")


@dataclass
class AbelianMonopole:
    """Signed sum of Dirac terms twisted by the flat pair (v, b), b in [0,1)."""

    terms: list[DiracTerm] = field(default_factory=list)
    v: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        self.b = float(self.b) % 1.0
        centers = [t.center for t in self.terms]
        for i in range(len(centers)):
            for j in range(i + 1, len(centers)):
                if centers[i].distance(centers[j]) == 0.0:
                    raise ValueError("term centers must be pairwise distinct")

    @property
    def total_periodic_charge(self) -> int:
        return sum(t.charge for t in self.terms if t.kind is Kind.PERIODIC)


def vacuum(v: float, b: float = 0.0) -> AbelianMonopole:
    return AbelianMonopole([], v, b)


@dataclass
class FieldSample:
    """Higgs value (-i Phi) and radial-gauge connection coefficients."""

    higgs: float
    a_theta: float
    a_t: float
    gauge_chart: str = "exterior"


def higgs(m: AbelianMonopole, p: CirclePoint3, tol: float = 1e-10) -> float:
    """v + sum of charge-weighted Green's/Coulomb profiles at p."""
    val = m.v
    n = max(len(m.terms), 1)
    for term in m.terms:
        if term.kind is Kind.PERIODIC:
            val += term.charge * green.green_eval(p, term.center, tol / n).value
        else:
            rho = p.distance(term.center)
            if rho == 0.0:
                raise SingularPointError("Higgs field evaluated at a singular center")
            val -= term.charge / (2.0 * rho)
    return val


def higgs_gradient(m: AbelianMonopole, p: CirclePoint3, tol: float = 1e-10) -> np.ndarray:
    """Gradient (d/dx, d/dy, d/dt) of the Higgs field at p."""
    out = np.zeros(3)
    n = max(len(m.terms), 1)
    for term in m.terms:
        if term.kind is Kind.PERIODIC:
            out += term.charge * green.green_eval(p, term.center, tol / n).grad
        else:
            dx = p.z.real - term.center.z.real
            dy = p.z.imag - term.center.z.imag
            dt = reduce_angle_signed(p.t - term.center.t)
            rho = math.sqrt(dx * dx + dy * dy + dt * dt)
            if rho == 0.0:
                raise SingularPointError("gradient at a singular center")
            out += term.charge * np.array([dx, dy, dt]) / (2.0 * rho**3)
    return out


def _single_periodic(m: AbelianMonopole) -> DiracTerm:
    if len(m.terms) != 1 or m.terms[0].kind is not Kind.PERIODIC:
        raise ValueError("operation requires a single periodic term")
    return m.terms[0]


def _bessel_sum_terms(r: float, tol: float) -> int:
    """Series length with r K1 tail below tol (same geometric decay as K0)."""
    M = 4
    while M < 200_000:
        if r * specfn.bessel_k1((M + 1) * r) / (math.pi * (1.0 - math.exp(-r))) <= tol:
            return M
        M *= 2
    return M


def connection_radial_gauge(m: AbelianMonopole, p: CirclePoint3,
                            tol: float = 1e-12) -> FieldSample:
    """Radial-gauge connection of a single periodic term, valid for r >= 2.

    a_theta = k [ -dt/(2 pi) + 1/2 - (r/pi) sum_m K1(m r) sin(m dt) ],
    a_t = b, in polar coordinates centred at the singularity; the Bessel sum
    is the closed form of -int_r^inf r' d_t psi dr' with
    int_r^inf r' K0(m r') dr' = (r/m) K1(m r).
    """
    term = _single_periodic(m)
    dz = p.z - term.center.z
    r = abs(dz)
    if r < 2.0:
        raise OutOfRegimeError(f"radial gauge requires r >= 2, got r={r}")
    dt = reduce_angle_signed(p.t - term.center.t)
    M = _bessel_sum_terms(r, tol / max(abs(term.charge), 1))
    k_arr = np.arange(1, M + 1, dtype=float)
    s = float(np.sum(specfn.bessel_k1(k_arr * r) * np.sin(k_arr * dt)))
    a_theta = term.charge * (-dt / TWO_PI + 0.5 - (r / math.pi) * s)
    h = higgs(m, p, tol)
    return FieldSample(h, a_theta, m.b, "exterior")


def translated_asymptotics(m: AbelianMonopole, p: CirclePoint3,
                           tol: float | None = None) -> FieldSample:
    """Two-term large-distance model of a single off-center periodic term,
    in the fixed coordinate frame; valid for |z| >= 2 |z_center|.

    higgs   = v + k (log r - Re(z0/z)) / 2 pi
    a_theta = k (-t/(2 pi) + (t0 + pi)/(2 pi))
    a_t     = b - k Im(z0/z) / (2 pi)

    The model is closed-form (tol accepted for interface symmetry, unused);
    the dropped remainder is O(r^-2).
    """
    term = _single_periodic(m)
    z0 = term.center.z
    t0 = term.center.t
    r = abs(p.z)
    if r < 2.0 * abs(z0) or r == 0.0:
        raise OutOfRegimeError("translated asymptotics requires |z| >= 2 |z0| > 0")
    w = z0 / p.z
    k = term.charge
    h = m.v + k * (math.log(r) - w.real) / TWO_PI
    a_theta = k * (-reduce_angle_signed(p.t) / TWO_PI + (t0 + math.pi) / TWO_PI)
    a_t = m.b - k * w.imag / TWO_PI
    return FieldSample(h, a_theta, a_t, "exterior")


def holonomy(m: AbelianMonopole, z: complex, tol: float = 1e-12) -> complex:
    """Holonomy of the connection around the fiber {z} x S^1:
    exp(-i sum_j k_j theta_j(z) - 2 pi i b), theta_j the principal angle of
    z - z_j. Euclidean terms carry no fiber holonomy."""
    phase = TWO_PI * m.b
    for term in m.terms:
        if term.kind is not Kind.PERIODIC:
            continue
        dz = complex(z) - term.center.z
        if dz == 0:
            raise SingularPointError("holonomy undefined through a singular center")
        phase += term.charge * math.atan2(dz.imag, dz.real)
    return cmath.exp(-1j * phase)


def _flux_through_fiber(r: float, dt_nodes: np.ndarray, M: int) -> float:
    """Trapezoid value of the circle integral of r * d_r G over {r} x S^1."""
    k = np.arange(1, M + 1, dtype=float)
    k1 = specfn.bessel_k1(k * r)
    g_r = 1.0 / (TWO_PI * r) + (k1 * k) @ np.cos(np.outer(k, dt_nodes)) / math.pi
    return float(np.mean(g_r) * TWO_PI * r)


def holonomy_integral(m: AbelianMonopole, z: complex, n_circle: int = 128) -> complex:
    """Integral-route holonomy: the derivative of the fiber integral of A in
    the base angle equals i times the flux of the curvature through the fiber
    (the circle integral of r d_r G). That flux is computed by quadrature; it
    is angle-independent by rotational invariance of G about its center, so
    the arc integral from each term's reference ray collapses to
    flux * theta. A correct quadrature must return flux = 1 per unit charge,
    which is exactly what the comparison with the closed form verifies."""
    phase = TWO_PI * m.b
    ts = np.arange(n_circle) * TWO_PI / n_circle
    for term in m.terms:
        if term.kind is not Kind.PERIODIC:
            continue
        dz = complex(z) - term.center.z
        r = abs(dz)
        if r == 0.0:
            raise SingularPointError("holonomy undefined through a singular center")
        theta = math.atan2(dz.imag, dz.real)
        M = green.fourier_terms_for(r, 1e-13)
        flux = _flux_through_fiber(r, ts - term.center.t, M)
        phase += term.charge * flux * theta
    return cmath.exp(-1j * phase)


def winding_number(m: AbelianMonopole, radius: float, n_samples: int = 720) -> int:
    """Integer winding of arg(holonomy) as z runs once around a circle that
    encloses every periodic center; equals minus the total periodic charge."""
    angles = np.linspace(0.0, TWO_PI, n_samples + 1)
    hols = [holonomy(m, radius * cmath.exp(1j * a)) for a in angles]
    arg = np.unwrap(np.angle(hols))
    turns = (arg[-1] - arg[0]) / TWO_PI
    w = round(turns)
    if abs(turns - w) > 1e-9:
        raise ArithmeticError(f"winding failed to quantize: {turns}")
    return int(w)


class RescaledPair:
    """Pull-back of a monopole under the homothety of ratio lam: an evaluator
    on R^2 x (R / 2 pi lam Z) with the Higgs field scaled as a 1-form."""

    def __init__(self, monopole: AbelianMonopole, lam: float):
        if lam <= 0.0:
            raise ValueError("scaling ratio must be positive")
        self.monopole = monopole
        self.lam = lam

    def higgs(self, z: complex, t: float, tol: float = 1e-10) -> float:
        p = CirclePoint3(complex(z) / self.lam, float(t) / self.lam)
        return higgs(self.monopole, p, tol) / self.lam


def rescale(m: AbelianMonopole, lam: float) -> RescaledPair:
    return RescaledPair(m, lam)


def euclidean_limit_profile(r: float, t: float) -> float:
    """Unit-mass Euclidean Dirac profile 1 - 1/(2 sqrt(r^2 + t^2)): the
    pointwise limit of the rescaled periodic monopole as v -> infinity."""
    return 1.0 - 0.5 / math.hypot(r, t)


def _grid_fields(m: AbelianMonopole, X: np.ndarray, Y: np.ndarray, T: np.ndarray,
                 h: float, M: int = 24):
    """phi and (a_x, a_y, a_t) on the tensor grid; periodic terms only."""
    shape = (X.size, Y.size, T.size)
    phi = np.full(shape, m.v)
    a_x = np.zeros(shape)
    a_y = np.zeros(shape)
    a_t = np.full(shape, m.b)
    for term in m.terms:
        if term.kind is not Kind.PERIODIC:
            raise ValueError("grid residual supports periodic terms only")
        dx = (X - term.center.z.real)[:, None, None]
        dy = (Y - term.center.z.imag)[None, :, None]
        dt_1d = np.array([reduce_angle_signed(t - term.center.t) for t in T])
        if np.any(np.abs(np.abs(dt_1d) - math.pi) < 4.0 * h):
            raise OutOfRegimeError("box crosses the radial-gauge seam dt = pi")
        dt = dt_1d[None, None, :]
        r = np.sqrt(dx * dx + dy * dy)
        if np.min(r) < 2.0:
            raise OutOfRegimeError("grid extends below the radial-gauge region r >= 2")
        ks = np.arange(1, M + 1, dtype=float)
        k0 = specfn.bessel_k0(np.multiply.outer(r[..., 0], ks))  # (nx, ny, M)
        k1 = specfn.bessel_k1(np.multiply.outer(r[..., 0], ks))
        cos_t = np.cos(np.outer(ks, dt_1d))  # (M, nt)
        sin_t = np.sin(np.outer(ks, dt_1d))
        psi = -np.einsum("xym,mt->xyt", k0, cos_t) / math.pi
        bsum = np.einsum("xym,mt->xyt", k1, sin_t)
        phi += term.charge * (np.log(r) / TWO_PI + psi)
        a_theta = term.charge * (-dt / TWO_PI + 0.5 - (r / math.pi) * bsum)
        a_x += a_theta * (-dy) / (r * r)
        a_y += a_theta * dx / (r * r)
    return phi, a_x, a_y, a_t


def bogomolny_residual(m: AbelianMonopole, box, h: float) -> float:
    """Max interior-node residual |curl(a) - grad(phi)| on a uniform grid over
    box = ((x0,x1),(y0,y1),(t0,t1)), second-order central differences.

    The box must stay in the radial-gauge region (r >= 2 from every center,
    at least 4h from the gauge seam)."""
    (x0, x1), (y0, y1), (t0, t1) = box
    X = np.arange(x0, x1 + 0.5 * h, h)
    Y = np.arange(y0, y1 + 0.5 * h, h)
    T = np.arange(t0, t1 + 0.5 * h, h)
    if min(X.size, Y.size, T.size) < 3:
        raise ValueError("box too small for the stencil at this mesh")
    for term in m.terms:
        c = term.center
        dmin = min(
            CirclePoint3(complex(x, y), t).distance(c)
            for x in (X[0], X[-1]) for y in (Y[0], Y[-1]) for t in (T[0], T[-1])
        )
        if dmin < 4.0 * h:
            raise OutOfRegimeError("grid region too close to a singular center")
    phi, a_x, a_y, a_t = _grid_fields(m, X, Y, T, h)

    def d(f, axis):
        sl = [slice(1, -1)] * 3
        lo = list(sl)
        hi = list(sl)
        lo[axis] = slice(0, -2)
        hi[axis] = slice(2, None)
        return (f[tuple(hi)] - f[tuple(lo)]) / (2.0 * h)

    res_x = d(a_t, 1) - d(a_y, 2) - d(phi, 0)
    res_y = d(a_x, 2) - d(a_t, 0) - d(phi, 1)
    res_t = d(a_y, 0) - d(a_x, 1) - d(phi, 2)
    return float(np.sqrt(res_x**2 + res_y**2 + res_t**2).max())
