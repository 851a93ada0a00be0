"""Parabolic-cylinder model contributions and the leading-order value.

Each stationary point S_j carries an exactly solvable cross problem whose
first moment has the Gamma-function closed form

    odd j :  (m1^j)_12 =  i (2pi)^(1/2) e^(+i pi/4) e^(-pi nu/2)
                          / (r(S_j) Gamma(-i nu_j)),
    even j:  (m1^j)_12 = -i (2pi)^(1/2) e^(-i pi/4) e^(-pi nu/2)
                          / (r(S_j) Gamma(+i nu_j)),

(the "conjugate_pair" convention).  The alternative "uniform_phase"
convention uses
e^(-i pi/4) for every j.  The two differ by a factor i on odd crosses and
cannot both be right; only conjugate_pair makes (m1^2)_12 = conj((m1^1)_12)
for real lattice data, which is what forces the assembled leading term

    q_n ~ Re[ delta(0)^-1 sum_j beta_j S_j^-2 (delta_j^0)^2 (m1^j)_12 ]

to be real up to the error scale.  Both conventions stay selectable so
the self-test can demonstrate the failure of the rejected one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConventionError, PoleError
from .phase import RayParams, StationarySet
from .weights import CoefficientSet

__all__ = [
    "SIGN_CONVENTIONS",
    "DEFAULT_SIGN_CONVENTION",
    "CrossSolution",
    "AsymptoticResult",
    "complex_gamma",
    "m1_entry",
    "cross_solutions",
    "leading_term",
    "amplitude_envelope",
    "oscillation_decomposition",
]

SIGN_CONVENTIONS = ("conjugate_pair", "uniform_phase")
DEFAULT_SIGN_CONVENTION = "conjugate_pair"

# Lanczos coefficients, g = 7, n = 9 (Godfrey / GSL set)
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def complex_gamma(w: complex) -> complex:
    """Gamma(w) by the Lanczos approximation with reflection for Re w < 1/2.

    Relative error is well below 1e-12 on the strip used by the model
    (|Im w| <= 2, Re w in [-0.5, 2]).
    """
    wc = complex(w)
    if wc.imag == 0.0 and wc.real <= 0.0 and wc.real == int(wc.real):
        raise PoleError(f"Gamma has a pole at {wc.real:.0f}")
    if wc.real < 0.5:
        # Gamma(w) Gamma(1-w) = pi / sin(pi w)
        return math.pi / (cmath.sin(math.pi * wc) * complex_gamma(1.0 - wc))
    x = wc - 1.0
    acc = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * cmath.exp(-t) * acc


@dataclass(frozen=True)
class CrossSolution:
    """First-moment entry of the model problem at one stationary point."""

    j: int
    nu: float
    r_at_S: complex
    m1_12: complex
    sign_convention: str


@dataclass(frozen=True)
class AsymptoticResult:
    """Leading-order asymptotic value at (n, t) with diagnostics."""

    n: int
    t: float
    q_asym: float
    contributions: tuple        # beta_j S_j^-2 (delta_j^0)^2 (m1^j)_12
    imag_residual: float
    delta_at_zero: complex


def m1_entry(nu: float, r_at_S: complex, j: int,
             sign_convention: str = DEFAULT_SIGN_CONVENTION) -> complex:
    """(m1^j)_12 for one cross; returns 0 at nu = 0 by continuity."""
    _check_convention(sign_convention)
    if j not in (1, 2, 3, 4):
        raise ValueError("j must be one of 1, 2, 3, 4")
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    if nu == 0.0 or r_at_S == 0.0:
        return 0.0 + 0.0j
    root = math.sqrt(2.0 * math.pi) * math.exp(-math.pi * nu / 2.0)
    odd = j % 2 == 1
    if sign_convention == "conjugate_pair":
        if odd:
            return 1j * root * cmath.exp(0.25j * math.pi) \
                / (r_at_S * complex_gamma(-1j * nu))
        return -1j * root * cmath.exp(-0.25j * math.pi) \
            / (r_at_S * complex_gamma(1j * nu))
    # uniform_phase: e^(-i pi/4) for every j
    sgn = (-1) ** (j - 1)
    return sgn * 1j * root * cmath.exp(-0.25j * math.pi) \
        / (r_at_S * complex_gamma((-1) ** j * 1j * nu))


def cross_solutions(r_eval, stationary: StationarySet, coeffs: CoefficientSet,
                    sign_convention: str = DEFAULT_SIGN_CONVENTION) -> tuple:
    """All four CrossSolution records under one convention."""
    _check_convention(sign_convention)
    out = []
    for j in (1, 2, 3, 4):
        r_at = r_eval(stationary.S[j - 1])
        nu = coeffs.nu[j - 1]
        out.append(CrossSolution(j=j, nu=nu, r_at_S=r_at,
                                 m1_12=m1_entry(nu, r_at, j, sign_convention),
                                 sign_convention=sign_convention))
    return tuple(out)


def leading_term(ray: RayParams, stationary: StationarySet,
                 coeffs: CoefficientSet, crosses,
                 realness_calibration: float | None = 0.02) -> AsymptoticResult:
    """Assemble the leading-order value at (n, t).

    realness_calibration is the constant C in the guard threshold
    10 C t^-1 log t on the imaginary residual; pass None to skip the
    guard (used by the sign-convention audit, which wants to look at the
    residual of the rejected branch instead of dying on it).
    """
    conventions = {c.sign_convention for c in crosses}
    if len(conventions) != 1:
        raise ConventionError("crosses mix sign conventions")
    total = 0.0 + 0.0j
    contributions = []
    for cross in crosses:  # fixed order j = 1..4 for bit-stable output
        k = cross.j - 1
        term = (stationary.beta[k] / (stationary.S[k] * stationary.S[k])
                * coeffs.delta_j0[k] ** 2 * cross.m1_12)
        contributions.append(term)
        total += term
    total /= coeffs.delta_at_zero
    imag_residual = abs(total.imag)
    if realness_calibration is not None:
        scale = math.log(max(ray.t, 2.0)) / ray.t
        if imag_residual > 10.0 * realness_calibration * scale:
            raise ConventionError(
                f"imaginary residual {imag_residual:.3e} exceeds "
                f"{10.0 * realness_calibration * scale:.3e}; "
                "sign/branch inconsistency upstream")
    return AsymptoticResult(n=ray.n, t=ray.t, q_asym=total.real,
                            contributions=tuple(contributions),
                            imag_residual=imag_residual,
                            delta_at_zero=coeffs.delta_at_zero)


def amplitude_envelope(result: AsymptoticResult) -> float:
    """Sum of contribution moduli over |delta(0)|: the O(t^-1/2) envelope."""
    return sum(abs(c) for c in result.contributions) / abs(result.delta_at_zero)


def oscillation_decomposition(ray: RayParams, stationary: StationarySet,
                              coeffs: CoefficientSet, j: int):
    """Oscillation diagnostics of contribution j.

    The oscillatory part of delta_j^0 is

        exp(i [2 n theta_j - 2 kappa_j t + (-1)^j nu_j log t] / 2 + i const),

    theta_j = arg S_j, kappa_j = Im S_j^2.  Returns (amplitude,
    phase_slope_t, phase_slope_logt) where amplitude = |contribution_j| =
    |beta_j| sqrt(nu_j) |delta_j^0|^2 and the slopes are the t and log t
    rates of that half-angle phase: -kappa_j and (-1)^j nu_j / 2.
    """
    if j not in (1, 2, 3, 4):
        raise ValueError("j must be one of 1, 2, 3, 4")
    k = j - 1
    amplitude = (abs(stationary.beta[k]) * math.sqrt(coeffs.nu[k])
                 * abs(coeffs.delta_j0[k]) ** 2)
    kappa = (stationary.S[k] * stationary.S[k]).imag
    return amplitude, -kappa, (-1) ** j * coeffs.nu[k] / 2.0


def _check_convention(name: str) -> None:
    if name not in SIGN_CONVENTIONS:
        raise ValueError(
            f"unknown sign convention {name!r}; expected one of {SIGN_CONVENTIONS}")
