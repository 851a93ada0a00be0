"""Arc-integral coefficients of the asymptotic formula.

All integrals run over arcs of the unit circle between the stationary
points and the anchors T_1 = T_2 = 1, T_3 = T_4 = -1.  Conventions,
pinned by the product identity delta = prod_j delta_j and by the
positivity |delta(0)| >= 1:

  * the two arcs of delta run S1 -> S2 through z = 1 and S3 -> S4
    through z = -1 (both counterclockwise),
  * the per-point arcs run T_j -> S_j along the short arc,

      delta(z)   = exp(-(1/2pi i) (int_{S1}^{S2} + int_{S3}^{S4})
                       log(1-|r|^2) dtau/(tau-z)),
      delta_j(z) = exp((-1)^(j-1) (1/2pi i) int_{T_j}^{S_j}
                       log(1-|r|^2) dtau/(tau-z)),
      nu_j       = -(1/2pi) log(1-|r(S_j)|^2),
      chi_j(z)   = (1/2pi i) int_{T_j}^{S_j}
                       log[(1-|r|^2)/(1-|r(S_j)|^2)] dtau/(tau-z),

and the per-cross constant assembled from them:

      delta_j^0 = S_j^n (beta_j/(S_j-T_j))^((-1)^(j-1) i nu_j)
                  exp[(-1)^(j-1) chi_j(S_j) - (t/2)(S_j^2 - S_j^-2)]
                  hat_delta_j(S_j),

with hat_delta_j = delta/delta_j and complex powers on the principal
branch (cut on the negative real axis).

Quadrature is adaptive composite 16-point Gauss-Legendre in the angle;
the chi_j integrand has a removable singularity at tau = S_j and is
integrated on panels refined geometrically toward that endpoint.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError, ReflectionTooLargeError
from .phase import RayParams, StationarySet

__all__ = [
    "ArcSpec",
    "CoefficientSet",
    "log_density",
    "cauchy_arc_integral",
    "delta_at",
    "delta_j_at",
    "nu_at",
    "chi_at_stationary",
    "hat_delta_at_stationary",
    "delta_j0",
    "coefficient_set",
]

DEFAULT_TOL = 1e-11
_T_ANCHORS = (1.0 + 0.0j, 1.0 + 0.0j, -1.0 + 0.0j, -1.0 + 0.0j)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class ArcSpec:
    """Short arc (central angle < pi) from `start` to `end` on |z| = 1."""

    start: complex
    end: complex
    theta_start: float
    dtheta: float

    @classmethod
    def between(cls, start: complex, end: complex) -> "ArcSpec":
        for p in (start, end):
            if abs(abs(p) - 1.0) > 1e-12:
                raise ValueError("arc endpoints must lie on the unit circle")
        theta_start = cmath.phase(start)
        dtheta = cmath.phase(end / start)  # wrapped to (-pi, pi]
        if not 0.0 < abs(dtheta) < math.pi:
            raise ValueError("central angle must lie strictly in (0, pi)")
        return cls(start=start, end=end, theta_start=theta_start, dtheta=dtheta)

    def point(self, s: float) -> complex:
        """Arc point at parameter s in [0, 1] (0 = start, 1 = end)."""
        return cmath.exp(1j * (self.theta_start + s * self.dtheta))

    def contains_angle(self, theta: float) -> bool:
        rel = (theta - self.theta_start) / self.dtheta
        # tolerate wrap-around of the absolute angle
        rel_wrapped = ((theta - self.theta_start + math.pi) % (2 * math.pi)
                       - math.pi) / self.dtheta
        return (0.0 <= rel <= 1.0) or (0.0 <= rel_wrapped <= 1.0)


def log_density(r_eval, z) -> float:
    """log(1 - |r(z)|^2) <= 0; the density of every arc integral."""
    zc = z.z if hasattr(z, "z") else complex(z)
    rv = r_eval(zc)
    m2 = abs(rv) ** 2
    if m2 >= (1.0 - 1e-8) ** 2:
        raise ReflectionTooLargeError(f"|r({zc})| = {math.sqrt(m2):.9f}")
    return math.log1p(-m2)


def _gl16(f, a: float, b: float) -> complex:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    acc = 0.0 + 0.0j
    for x, w in zip(_GL_NODES, _GL_WEIGHTS):
        acc += w * f(mid + half * x)
    return half * acc


def _adaptive(f, a: float, b: float, tol: float, depth: int = 0,
              whole: complex | None = None) -> complex:
    if whole is None:
        whole = _gl16(f, a, b)
    mid = 0.5 * (a + b)
    left = _gl16(f, a, mid)
    right = _gl16(f, mid, b)
    if abs(left + right - whole) <= tol:
        return left + right
    if depth >= 48:
        raise QuadratureError(
            f"adaptive quadrature stalled on [{a}, {b}] "
            f"(residual {abs(left + right - whole):.3e} > {tol:.3e})")
    return (_adaptive(f, a, mid, 0.5 * tol, depth + 1, left)
            + _adaptive(f, mid, b, 0.5 * tol, depth + 1, right))


def cauchy_arc_integral(density, arc: ArcSpec, z: complex,
                        tol: float = DEFAULT_TOL) -> complex:
    """(1/2pi i) int_arc density(tau) dtau / (tau - z).

    `density` takes a point tau on the circle; z must be off the open
    arc.  With tau = e^(i theta), dtau/(2pi i) = e^(i theta) dtheta/(2pi).
    """
    zc = complex(z)
    if abs(abs(zc) - 1.0) < 1e-13 and arc.contains_angle(cmath.phase(zc)):
        raise DomainError("evaluation point lies on the integration arc")

    def integrand(theta: float) -> complex:
        tau = cmath.exp(1j * theta)
        return density(tau) * tau / (2.0 * math.pi * (tau - zc))

    a = arc.theta_start
    return _adaptive(integrand, a, a + arc.dtheta, tol)


def delta_arcs(stationary: StationarySet) -> tuple:
    """The two arcs of the scalar problem: S1->S2 through 1, S3->S4 through -1."""
    S = stationary.S
    return (ArcSpec.between(S[0], S[1]), ArcSpec.between(S[2], S[3]))


def delta_j_arc(stationary: StationarySet, j: int) -> ArcSpec:
    """Per-point arc T_j -> S_j (short arc)."""
    _check_j(j)
    return ArcSpec.between(_T_ANCHORS[j - 1], stationary.S[j - 1])


def delta_at(r_eval, stationary: StationarySet, z: complex,
             tol: float = DEFAULT_TOL) -> complex:
    """Scalar-problem solution delta(z); tends to 1 as z -> infinity."""
    total = 0.0 + 0.0j
    for arc in delta_arcs(stationary):
        total += cauchy_arc_integral(
            lambda tau: log_density(r_eval, tau), arc, z, tol)
    return cmath.exp(-total)


def delta_j_at(r_eval, stationary: StationarySet, j: int, z: complex,
               tol: float = DEFAULT_TOL) -> complex:
    """Single-arc factor delta_j(z); delta = prod_j delta_j."""
    _check_j(j)
    arc = delta_j_arc(stationary, j)
    val = cauchy_arc_integral(
        lambda tau: log_density(r_eval, tau), arc, z, tol)
    return cmath.exp((-1) ** (j - 1) * val)


def nu_at(r_eval, stationary: StationarySet, j: int) -> float:
    """Local exponent nu_j = -(1/2pi) log(1 - |r(S_j)|^2) >= 0."""
    _check_j(j)
    return -log_density(r_eval, stationary.S[j - 1]) / (2.0 * math.pi)


def chi_at_stationary(r_eval, stationary: StationarySet, j: int,
                      tol: float = DEFAULT_TOL) -> complex:
    """chi_j evaluated at z = S_j.

    The integrand log[(1-|r(tau)|^2)/(1-|r(S_j)|^2)] / (tau - S_j) has a
    removable singularity at tau = S_j; panels are refined geometrically
    toward that endpoint so the adaptive rule never chases the 0/0
    cancellation noise.
    """
    _check_j(j)
    arc = delta_j_arc(stationary, j)
    Sj = stationary.S[j - 1]
    g_at_S = log_density(r_eval, Sj)

    def integrand(theta: float) -> complex:
        tau = cmath.exp(1j * theta)
        num = log_density(r_eval, tau) - g_at_S
        return num * tau / (2.0 * math.pi * (tau - Sj))

    a = arc.theta_start
    length = arc.dtheta  # signed; endpoint S_j sits at a + length
    levels = 40
    total = 0.0 + 0.0j
    lo = 0.0
    for m in range(1, levels + 1):
        hi = length * (1.0 - 0.5 ** m)
        total += _adaptive(integrand, a + lo, a + hi, tol / levels)
        lo = hi
    # remaining sliver of relative size 2^-levels: integrand is bounded,
    # midpoint estimate is far below tol
    sliver = length - lo
    total += integrand(a + lo + 0.5 * sliver) * sliver
    return total


def hat_delta_at_stationary(r_eval, stationary: StationarySet, j: int,
                            tol: float = DEFAULT_TOL) -> complex:
    """hat_delta_j(S_j) = prod_{k != j} delta_k(S_j).

    Regular because S_j never lies on the arc of any k != j.
    """
    _check_j(j)
    Sj = stationary.S[j - 1]
    out = 1.0 + 0.0j
    for k in (1, 2, 3, 4):
        if k != j:
            out *= delta_j_at(r_eval, stationary, k, Sj, tol)
    return out


def delta_j0(ray: RayParams, stationary: StationarySet,
             coeffs: "CoefficientSet", j: int) -> complex:
    """Per-cross constant delta_j^0 of the scaled local problem."""
    _check_j(j)
    Sj = stationary.S[j - 1]
    Tj = _T_ANCHORS[j - 1]
    beta = stationary.beta[j - 1]
    sgn = (-1) ** (j - 1)
    nu = coeffs.nu[j - 1]

    theta_j = cmath.phase(Sj)
    kappa_j = (Sj * Sj).imag  # S_j^-2 = conj(S_j^2) on the circle
    osc = cmath.exp(1j * (ray.n * theta_j - ray.t * kappa_j))
    power = cmath.exp(sgn * 1j * nu * cmath.log(beta / (Sj - Tj)))
    return (osc * power * cmath.exp(sgn * coeffs.chi_at_S[j - 1])
            * coeffs.hat_delta_at_S[j - 1])


@dataclass(frozen=True)
class CoefficientSet:
    """All per-point coefficients plus delta(0) for one ray."""

    nu: tuple
    chi_at_S: tuple
    hat_delta_at_S: tuple
    delta_j0: tuple
    delta_at_zero: complex


def coefficient_set(r_eval, stationary: StationarySet,
                    tol: float = DEFAULT_TOL) -> CoefficientSet:
    """Compute every coefficient the asymptotic formula needs."""
    nu = tuple(nu_at(r_eval, stationary, j) for j in (1, 2, 3, 4))
    chis = tuple(chi_at_stationary(r_eval, stationary, j, tol)
                 for j in (1, 2, 3, 4))
    hats = tuple(hat_delta_at_stationary(r_eval, stationary, j, tol)
                 for j in (1, 2, 3, 4))
    d0 = delta_at(r_eval, stationary, 0.0, tol)
    partial = CoefficientSet(nu=nu, chi_at_S=chis, hat_delta_at_S=hats,
                             delta_j0=(None,) * 4, delta_at_zero=d0)
    d0s = tuple(delta_j0(stationary.ray, stationary, partial, j)
                for j in (1, 2, 3, 4))
    return CoefficientSet(nu=nu, chi_at_S=chis, hat_delta_at_S=hats,
                          delta_j0=d0s, delta_at_zero=d0)


def _check_j(j: int) -> None:
    if j not in (1, 2, 3, 4):
        raise ValueError("j must be one of 1, 2, 3, 4")
