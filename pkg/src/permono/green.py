"""The periodic Green's function G of R^2 x S^1 with a single pole.

G is evaluated in three regimes that cover the punctured space:

* ``ImageSum``     -- the regularized sum over circle images, valid everywhere;
  the tail after pairing the +/-m images is bounded by an explicit
  second-order Taylor remainder, giving a certified truncation bound
  C(r)/M^2 with C(r) = (1/(3 pi) + r^2/pi^3)/4.
* ``FourierBessel`` -- (1/2 pi) log r - (1/pi) sum_m K0(m r) cos(m dt),
  valid for r > 0 with geometric tail K0((M+1) r)/(pi (1 - e^{-r})).
* ``Multipole``    -- a0/2 - 1/(2 rho) near the pole (rho < pi/2), with model
  error bounded by C2 rho^2 for an empirically calibrated C2.

Every evaluation returns the value, the gradient (d/dx, d/dy, d/dt) and the
certified truncation bound of the value for the regime used.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfn
from .errors import OutOfRegimeError, SingularPointError, ToleranceUnreachableError

TWO_PI = 2.0 * math.pi

#: regime boundaries of the automatic dispatcher
RHO_SWITCH = 0.1
R_SWITCH = 0.5

#: multipole model error |G - (a0/2 - 1/(2 rho))| <= C2 rho^2 on rho < pi/2.
#: Calibrated against the image sum: measured sup of residual/rho^2 over the
#: whole regime is 0.00513 (0.0048 for rho < 0.15); 0.01 keeps a ~2x margin.
C2_MULTIPOLE = 0.01

A0 = specfn.a_constants(0)[0]

#: hard ceilings on series lengths before giving up on a tolerance
_MAX_IMAGE_TERMS = 20_000_000
_MAX_FOURIER_TERMS = 200_000
_TOL_FLOOR = 1e-12


class Regime(enum.Enum):
    IMAGE_SUM = "ImageSum"
    FOURIER_BESSEL = "FourierBessel"
    MULTIPOLE = "Multipole"


def reduce_angle(t: float) -> float:
    """Reduce to [0, 2 pi)."""
    return float(t) % TWO_PI


def reduce_angle_signed(t: float) -> float:
    """Reduce to (-pi, pi]."""
    r = float(t) % TWO_PI
    if r > math.pi:
        r -= TWO_PI
    return r


def circle_dist(t1: float, t2: float) -> float:
    """Distance on the circle of circumference 2 pi."""
    d = abs(reduce_angle(t1) - reduce_angle(t2))
    return min(d, TWO_PI - d)


@dataclass
class CirclePoint3:
    """A point (z, t) of R^2 x (R / 2 pi Z); t is stored reduced mod 2 pi."""

    z: complex
    t: float

    def __post_init__(self):
        self.z = complex(self.z)
        self.t = reduce_angle(self.t)

    def distance(self, other: "CirclePoint3") -> float:
        return math.hypot(abs(self.z - other.z), circle_dist(self.t, other.t))

    @property
    def x(self) -> float:
        return self.z.real

    @property
    def y(self) -> float:
        return self.z.imag


ORIGIN = CirclePoint3(0.0, 0.0)


@dataclass
class GreenEval:
    """Value, gradient and certified truncation bound of one evaluation."""

    value: float
    grad: np.ndarray
    trunc_bound: float
    regime: Regime
    terms: int = field(default=0)


def _offsets(p: CirclePoint3, q: CirclePoint3) -> tuple[float, float, float]:
    """Coordinates of p recentred at q, circle offset reduced to (-pi, pi]."""
    dz = p.z - q.z
    return dz.real, dz.imag, reduce_angle_signed(p.t - q.t)


def image_tail_constant(r: float) -> float:
    """C(r) with tail(M) <= C(r)/M^2 for the paired image sum.

    For m > M pair the +/-m images; with s = 2 pi m and |u| <= pi,
    |pair - 1/(pi m)| <= 2u^2/(s(s^2-u^2)) + (r^2/2)(1/(s-u)^3 + 1/(s+u)^3)
                      <= (1/(3 pi) + r^2/pi^3) / m^3,
    and sum_{m>M} m^-3 <= 1/(2 M^2); the series carries an overall 1/2.
    """
    return (1.0 / (3.0 * math.pi) + r * r / math.pi**3) / 4.0


def green_image_sum(p: CirclePoint3, q: CirclePoint3 = ORIGIN, M: int = 1000) -> GreenEval:
    """Truncated image sum, symmetric over m = -M..M with paired +/-m terms."""
    if M < 1:
        raise ValueError("M must be >= 1")
    dx, dy, dt = _offsets(p, q)
    r2 = dx * dx + dy * dy
    if r2 == 0.0 and dt == 0.0:
        raise SingularPointError("image sum evaluated at its singular point")

    m = np.arange(1, M + 1, dtype=float)
    up = dt - TWO_PI * m
    dn = dt + TWO_PI * m
    dup = np.sqrt(r2 + up * up)
    ddn = np.sqrt(r2 + dn * dn)
    a_m = 1.0 / (TWO_PI * m)

    d0 = math.sqrt(r2 + dt * dt)
    value = -0.5 * (
        (1.0 / d0 - A0) + float(np.sum((1.0 / dup - a_m) + (1.0 / ddn - a_m)))
    )
    iup3 = dup**-3
    idn3 = ddn**-3
    s3 = float(np.sum(iup3 + idn3)) + d0**-3
    gx = 0.5 * dx * s3
    gy = 0.5 * dy * s3
    gt = 0.5 * (float(np.sum(up * iup3 + dn * idn3)) + dt * d0**-3)
    bound = image_tail_constant(math.sqrt(r2)) / (M * M)
    return GreenEval(value, np.array([gx, gy, gt]), bound, Regime.IMAGE_SUM, terms=M)


def fourier_terms_for(r: float, tol: float) -> int:
    """Smallest M with K0((M+1) r)/(pi (1 - e^{-r})) <= tol."""
    if r <= 0.0:
        raise SingularPointError("Fourier-Bessel regime requires r > 0")
    pref = 1.0 / (math.pi * (1.0 - math.exp(-r)))
    M = max(1, int(math.ceil(-math.log(max(tol, 1e-300) / pref) / r)))
    while M <= _MAX_FOURIER_TERMS:
        if specfn.bessel_k0((M + 1) * r) * pref <= tol:
            return M
        M *= 2
    raise ToleranceUnreachableError(f"tol={tol} unreachable in Fourier-Bessel at r={r}")


def green_fourier_bessel(p: CirclePoint3, q: CirclePoint3 = ORIGIN, M: int = 60) -> GreenEval:
    """Log plus Bessel-mode expansion; requires r = |z - z_q| > 0."""
    if M < 1:
        raise ValueError("M must be >= 1")
    dx, dy, dt = _offsets(p, q)
    r = math.hypot(dx, dy)
    if r == 0.0:
        raise SingularPointError("Fourier-Bessel regime requires r > 0")

    m = np.arange(1, M + 1, dtype=float)
    k0 = specfn.bessel_k0(m * r)
    k1 = specfn.bessel_k1(m * r)
    c = np.cos(m * dt)
    s = np.sin(m * dt)

    value = math.log(r) / TWO_PI - float(np.sum(k0 * c)) / math.pi
    g_r = 1.0 / (TWO_PI * r) + float(np.sum(m * k1 * c)) / math.pi
    g_t = float(np.sum(m * k0 * s)) / math.pi
    grad = np.array([g_r * dx / r, g_r * dy / r, g_t])
    bound = specfn.bessel_k0((M + 1) * r) / (math.pi * (1.0 - math.exp(-r)))
    return GreenEval(value, grad, bound, Regime.FOURIER_BESSEL, terms=M)


def green_multipole(p: CirclePoint3, q: CirclePoint3 = ORIGIN) -> GreenEval:
    """Near-pole model a0/2 - 1/(2 rho); valid for rho < pi/2."""
    dx, dy, dt = _offsets(p, q)
    rho = math.sqrt(dx * dx + dy * dy + dt * dt)
    if rho == 0.0:
        raise SingularPointError("multipole model evaluated at its singular point")
    if rho >= math.pi / 2.0:
        raise OutOfRegimeError(f"multipole regime requires rho < pi/2, got rho={rho}")
    value = 0.5 * A0 - 0.5 / rho
    grad = np.array([dx, dy, dt]) / (2.0 * rho**3)
    return GreenEval(value, grad, C2_MULTIPOLE * rho * rho, Regime.MULTIPOLE)


def green_eval(p: CirclePoint3, q: CirclePoint3 = ORIGIN, tol: float = 1e-10) -> GreenEval:
    """Evaluate G with automatic regime selection and trunc_bound <= tol.

    Multipole is used for rho < RHO_SWITCH when its model error meets tol,
    Fourier-Bessel for r > R_SWITCH, and the image sum otherwise (also as the
    fallback near the pole when tol beats the multipole model error).
    Raises ToleranceUnreachableError for tol below the 1e-12 rounding floor.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    dx, dy, dt = _offsets(p, q)
    r = math.hypot(dx, dy)
    rho = math.sqrt(r * r + dt * dt)
    if rho == 0.0:
        raise SingularPointError("G evaluated at its singular point")

    if rho < RHO_SWITCH:
        if C2_MULTIPOLE * rho * rho <= tol:
            return green_multipole(p, q)
        if tol < _TOL_FLOOR:
            raise ToleranceUnreachableError(
                f"tol={tol} below the multipole model error and the {_TOL_FLOOR} floor"
            )
        M = math.ceil(math.sqrt(image_tail_constant(r) / tol))
        return green_image_sum(p, q, M)
    if r > R_SWITCH:
        return green_fourier_bessel(p, q, fourier_terms_for(r, tol))
    M = math.ceil(math.sqrt(image_tail_constant(r) / tol))
    if M > _MAX_IMAGE_TERMS:
        raise ToleranceUnreachableError(f"tol={tol} needs {M} image terms")
    return green_image_sum(p, q, max(M, 1))


def green_dt_zero_check(r: float, M: int | None = None) -> float:
    """max(|d_t G(r, 0)|, |d_t G(r, pi)|) from the Fourier-Bessel gradient."""
    if r <= 0.0:
        raise ValueError("r must be positive")
    if M is None:
        M = fourier_terms_for(r, 1e-14)
    out = 0.0
    for t in (0.0, math.pi):
        g = green_fourier_bessel(CirclePoint3(complex(r, 0.0), t), ORIGIN, M)
        out = max(out, abs(g.grad[2]))
    return out


def evaluate_batch(points: list[CirclePoint3], q: CirclePoint3 = ORIGIN,
                   tol: float = 1e-10) -> list[GreenEval]:
    """Evaluate a list of points; each point is independent (safe to parallelize)."""
    return [green_eval(p, q, tol) for p in points]
