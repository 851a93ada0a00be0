"""Phase function of the oscillatory jump matrix and its stationary points.

    phi(z) = (t/2)(z^2 - z^-2) - n Log z,

with the principal branch of the logarithm (cut on the negative real
axis); every complex power elsewhere in the package uses the same branch.
On a ray v = n/t with |v| < 2 there are four first-order stationary
points on the unit circle,

    S1 = A,  S2 = conj(A),  S3 = -A,  S4 = -conj(A),
    A = (sqrt(2+v) - i sqrt(2-v)) / 2,

and the local scaling factors beta_j satisfy phi''(S_j) beta_j^2 =
(-1)^(j+1) i/2, which is the identity everything downstream leans on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, MergingPointsError

__all__ = [
    "RayParams",
    "StationarySet",
    "phase_at",
    "phase_derivative",
    "stationary_points",
    "phase_second_derivative",
    "scaling_factor",
]

DEFAULT_V_MAX = 1.8
MERGING_MARGIN = 0.05


@dataclass(frozen=True)
class RayParams:
    """Space-time ray n/t inside the light cone |v| <= v_max < 2."""

    n: int
    t: float
    v_max: float = DEFAULT_V_MAX

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError("t must be positive")
        if not (0 < self.v_max < 2):
            raise ValueError("v_max must lie in (0, 2)")
        if abs(self.v) > self.v_max:
            raise ValueError(
                f"|n/t| = {abs(self.v):.4f} exceeds v_max = {self.v_max}")

    @property
    def v(self) -> float:
        return self.n / self.t


@dataclass(frozen=True)
class StationarySet:
    """Stationary points S_1..S_4 with phi''(S_j) and beta_j (index j-1)."""

    S: tuple
    theta0: float
    phi_dd: tuple
    beta: tuple
    ray: RayParams


def phase_at(z: complex, ray: RayParams) -> complex:
    """phi(z) = (t/2)(z^2 - z^-2) - n Log z."""
    zc = complex(z)
    if zc == 0:
        raise DomainError("phase is undefined at z = 0")
    return 0.5 * ray.t * (zc * zc - 1.0 / (zc * zc)) - ray.n * cmath.log(zc)


def phase_derivative(z: complex, ray: RayParams) -> complex:
    """phi'(z) = t(z + z^-3) - n/z."""
    zc = complex(z)
    if zc == 0:
        raise DomainError("phase is undefined at z = 0")
    return ray.t * (zc + zc ** -3) - ray.n / zc


def _direct_phi_dd(z: complex, ray: RayParams) -> complex:
    return ray.t * (1.0 - 3.0 * z ** -4) + ray.n / (z * z)


def stationary_points(ray: RayParams, margin: float = MERGING_MARGIN,
                      residual_tol: float = 1e-10) -> StationarySet:
    """Locate S_1..S_4 and precompute phi''(S_j) and beta_j.

    Raises MergingPointsError within `margin` of the light-cone edge
    |v| = 2, where the points coalesce at z = +-1.
    """
    v = ray.v
    if 2.0 - abs(v) < margin:
        raise MergingPointsError(
            f"|v| = {abs(v):.4f} is within {margin} of the merging value 2")
    A = 0.5 * (math.sqrt(2.0 + v) - 1j * math.sqrt(2.0 - v))
    S = (A, A.conjugate(), -A, -A.conjugate())
    theta0 = -cmath.phase(A)

    root = math.sqrt(4.0 * ray.t ** 2 - ray.n ** 2)
    phi_dd = tuple((-1) ** j * 2j * root / (S[j - 1] * S[j - 1])
                   for j in (1, 2, 3, 4))
    beta = tuple(0.5 * root ** -0.5 * 1j * S[j - 1] * (-1) ** j
                 for j in (1, 2, 3, 4))

    worst = max(abs(phase_derivative(s, ray)) for s in S)
    # residual of the algebraic zero scales with t * eps
    if worst > residual_tol * max(1.0, ray.t):
        raise DomainError(f"stationary-point residual {worst:.3e} too large")
    return StationarySet(S=S, theta0=theta0, phi_dd=phi_dd, beta=beta, ray=ray)


def phase_second_derivative(ray: RayParams, j: int) -> complex:
    """Closed form phi''(S_j) = (-1)^j 2i S_j^-2 sqrt(4t^2 - n^2)."""
    return stationary_points(ray).phi_dd[_check_j(j) - 1]


def scaling_factor(ray: RayParams, j: int) -> complex:
    """beta_j = (1/2)(4t^2 - n^2)^(-1/4) i S_j (-1)^j."""
    return stationary_points(ray).beta[_check_j(j) - 1]


def _check_j(j: int) -> int:
    if j not in (1, 2, 3, 4):
        raise ValueError("j must be one of 1, 2, 3, 4")
    return j
