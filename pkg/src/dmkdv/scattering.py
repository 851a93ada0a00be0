"""Direct scattering transform for the lattice on the unit circle.

Jost solutions are built by 2x2 transfer recursions at t = 0.  With the
one-step increment

    B_k(z) = [[0, q_k z^(-2k-1)], [q_k z^(2k+1), 0]],

the left eigenfunction satisfies Y_{k+1} = (I + B_k) Y_k with Y -> I far
left of the support, and the right one Y_k = (I + B_k)^(-1) Y_{k+1} with
Y -> I far right.  The connection coefficients follow from determinant
formulas; on |z| = 1 they satisfy |a|^2 - |b|^2 = c_inf, and the
reflection coefficient r = b/a has |r| < 1.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, ReflectionTooLargeError, SingularStepError
from .lattice import LatticeState, conserved_c_inf

__all__ = [
    "UnitCirclePoint",
    "JostPair",
    "ScatteringData",
    "ReflectionGrid",
    "reduced_potential",
    "jost_minus",
    "jost_plus",
    "jost_pair",
    "scattering_coefficients",
    "reflection_grid",
    "reflection_evaluator",
]

_CIRCLE_TOL = 1e-12


@dataclass(frozen=True)
class UnitCirclePoint:
    """Point z = e^(i theta) on the jump circle, theta in (-pi, pi]."""

    theta: float
    z: complex

    def __post_init__(self):
        if abs(abs(self.z) - 1.0) > 1e-14:
            raise ValueError(f"|z| = {abs(self.z)!r} is not 1")

    @classmethod
    def from_theta(cls, theta: float) -> "UnitCirclePoint":
        wrapped = (theta + np.pi) % (2.0 * np.pi) - np.pi
        if wrapped == -np.pi:
            wrapped = np.pi
        return cls(theta=wrapped, z=cmath.exp(1j * wrapped))

    @classmethod
    def from_z(cls, z: complex) -> "UnitCirclePoint":
        if abs(abs(z) - 1.0) > _CIRCLE_TOL:
            raise DomainError(f"|z| = {abs(z)!r} is not 1 within {_CIRCLE_TOL}")
        zn = z / abs(z)
        return cls(theta=cmath.phase(zn), z=zn)


@dataclass(frozen=True)
class JostPair:
    """Left/right eigenfunctions evaluated at a common site."""

    y_minus: np.ndarray
    y_plus: np.ndarray
    at_site: int

    def __post_init__(self):
        if abs(np.linalg.det(self.y_plus)) == 0.0:
            raise SingularStepError("right eigenfunction is singular")


@dataclass(frozen=True)
class ScatteringData:
    """Connection coefficients at one circle point, r = b/a."""

    a: complex
    b: complex
    r: complex
    at: UnitCirclePoint
    c_inf: float


def _as_complex(z) -> complex:
    return z.z if isinstance(z, UnitCirclePoint) else complex(z)


def reduced_potential(q: LatticeState, n: int, z) -> np.ndarray:
    """One-step transfer increment B_n(z) at t = 0, restricted to |z| = 1."""
    zc = _as_complex(z)
    if abs(abs(zc) - 1.0) > _CIRCLE_TOL:
        raise DomainError(f"|z| = {abs(zc)!r} is not 1 within {_CIRCLE_TOL}")
    if q.t != 0.0:
        raise ValueError("scattering data is defined from the t = 0 state")
    qn = q.value_at(n)
    return np.array([[0.0, qn * zc ** (-2 * n - 1)],
                     [qn * zc ** (2 * n + 1), 0.0]], dtype=complex)


def _step(qn: float, n: int, z: complex) -> np.ndarray:
    # I + B_n(z); valid for any z != 0, not just on the circle
    return np.array([[1.0, qn * z ** (-2 * n - 1)],
                     [qn * z ** (2 * n + 1), 1.0]], dtype=complex)


def jost_minus(q: LatticeState, z, n_stop: int) -> np.ndarray:
    """Left Jost solution Y_{n_stop}^(-) (identity far left of support)."""
    zc = _as_complex(z)
    y = np.eye(2, dtype=complex)
    for k in range(q.n_min, n_stop):
        qk = q.value_at(k)
        if qk != 0.0:
            y = _step(qk, k, zc) @ y
    return y


def jost_plus(q: LatticeState, z, n_stop: int) -> np.ndarray:
    """Right Jost solution Y_{n_stop}^(+) (identity far right of support)."""
    zc = _as_complex(z)
    y = np.eye(2, dtype=complex)
    for k in range(q.n_max, n_stop - 1, -1):
        qk = q.value_at(k)
        if qk == 0.0:
            continue
        m = _step(qk, k, zc)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if det == 0.0:
            raise SingularStepError(f"singular one-step matrix at site {k}")
        inv = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]],
                       dtype=complex) / det
        y = inv @ y
    return y


def jost_pair(q: LatticeState, z, at_site: int) -> JostPair:
    """Both eigenfunctions evaluated at a common site."""
    zc = _as_complex(z)
    return JostPair(y_minus=jost_minus(q, zc, at_site),
                    y_plus=jost_plus(q, zc, at_site), at_site=at_site)


def scattering_coefficients(q: LatticeState, z, n_eval: int | None = None) -> ScatteringData:
    """Coefficients a, b and r = b/a from the determinant formulas.

    a = det(col1 Y^-, col2 Y^+) / det Y^+ and
    b = det(col1 Y^+, col1 Y^-) / det Y^+, evaluated at a common site
    (the result is site independent).  The default site is one past the
    right edge of the support, where Y^+ is exactly the identity.
    """
    at = z if isinstance(z, UnitCirclePoint) else UnitCirclePoint.from_z(z)
    if n_eval is None:
        n_eval = q.n_max + 1
    ym = jost_minus(q, at.z, n_eval)
    yp = jost_plus(q, at.z, n_eval)
    det_p = yp[0, 0] * yp[1, 1] - yp[0, 1] * yp[1, 0]
    if det_p == 0.0:
        raise SingularStepError("det Y^+ vanished at the evaluation site")
    a = (ym[0, 0] * yp[1, 1] - yp[0, 1] * ym[1, 0]) / det_p
    b = (yp[0, 0] * ym[1, 0] - ym[0, 0] * yp[1, 0]) / det_p
    return ScatteringData(a=a, b=b, r=b / a, at=at, c_inf=conserved_c_inf(q))


def reflection_evaluator(q: LatticeState):
    """Callable z -> r(z) for quadrature modules (z complex on |z|=1)."""
    def r_eval(z: complex) -> complex:
        return scattering_coefficients(q, z).r
    return r_eval


@dataclass(frozen=True)
class ReflectionGrid:
    """r sampled at uniformly spaced angles (diagnostics and plots).

    Evaluation between nodes uses the trigonometric polynomial through the
    samples (FFT coefficients), which is exact when r is a trigonometric
    polynomial (e.g. single-site data) and spectrally accurate otherwise.
    """

    points: tuple
    values: np.ndarray
    max_abs_r: float

    @cached_property
    def _modes(self):
        size = len(self.values)
        coeffs = np.fft.fft(self.values) / size
        # frequencies 0..size-1 fold to negative modes above size//2
        ks = np.fft.fftfreq(size, d=1.0 / size)
        return coeffs, ks

    def evaluate(self, z: complex) -> complex:
        coeffs, ks = self._modes
        zc = _as_complex(z)
        return complex(np.sum(coeffs * zc ** ks))


def reflection_grid(q: LatticeState, size: int = 256) -> ReflectionGrid:
    """Sample r at `size` (a power of two >= 64) uniform angles."""
    if size < 64 or (size & (size - 1)) != 0:
        raise ValueError("grid size must be a power of two >= 64")
    thetas = 2.0 * np.pi * np.arange(size) / size
    points = tuple(UnitCirclePoint.from_theta(th) for th in thetas)
    values = np.array([scattering_coefficients(q, p).r for p in points])
    max_abs = float(np.max(np.abs(values)))
    if max_abs >= 1.0 - 1e-8:
        raise ReflectionTooLargeError(
            f"max |r| = {max_abs:.12f} is not strictly below 1")
    return ReflectionGrid(points=points, values=values, max_abs_r=max_abs)
