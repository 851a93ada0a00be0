"""Discrete defocusing mKdV lattice on a finite window.

The equation is

    dq_n/dt = (1 - q_n^2) (q_{n+1} - q_{n-1}),

for real q_n with sup|q_n| < 1 (defocusing regime).  States live on a
finite index window; sites outside the window are implicitly zero, which
is a faithful truncation as long as nothing reaches the boundary (the
signal speed of the linearization is 2 sites per unit time).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BlowupError, SpillError

__all__ = [
    "LatticeState",
    "InitialProfile",
    "rhs",
    "integrate",
    "conserved_c_inf",
    "rho_zero",
    "weighted_norm",
    "staggered",
]


@dataclass(frozen=True)
class LatticeState:
    """Real sequence q_n on sites n_min .. n_min+len(values)-1 at time t."""

    n_min: int
    values: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("values must be a nonempty 1-d real array")
        if np.max(np.abs(vals)) >= 1.0:
            raise ValueError("sup|q| must be strictly below 1 (defocusing)")

    @property
    def n_max(self) -> int:
        return self.n_min + len(self.values) - 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_min + len(self.values))

    def value_at(self, n: int) -> float:
        """q_n, with the implicit zero extension outside the window."""
        if n < self.n_min or n > self.n_max:
            return 0.0
        return float(self.values[n - self.n_min])


@dataclass(frozen=True)
class InitialProfile:
    """Recipe for initial data.  kinds: zero, single_site, gaussian,
    custom_list (values then taken from ``custom`` starting at ``center``)."""

    kind: str = "single_site"
    amplitude: float = 0.3
    width: float = 1.0
    center: int = 0
    custom: tuple = field(default_factory=tuple)

    _KINDS = ("zero", "single_site", "gaussian", "custom_list")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind in ("single_site", "gaussian") and not abs(self.amplitude) < 1.0:
            raise ValueError("amplitude must lie in (-1, 1)")
        if self.kind == "gaussian" and self.width <= 0:
            raise ValueError("width must be positive")

    def realize(self, n_min: int, n_max: int) -> LatticeState:
        """Materialize the profile on the window [n_min, n_max] at t = 0."""
        if n_max < n_min:
            raise ValueError("empty window")
        sites = np.arange(n_min, n_max + 1)
        q = np.zeros(sites.size)
        if self.kind == "single_site":
            if not (n_min <= self.center <= n_max):
                raise ValueError("center outside window")
            q[self.center - n_min] = self.amplitude
        elif self.kind == "gaussian":
            q = self.amplitude * np.exp(-((sites - self.center) / self.width) ** 2 / 2.0)
        elif self.kind == "custom_list":
            vals = np.asarray(self.custom, dtype=float)
            lo = self.center - n_min
            if lo < 0 or lo + vals.size > sites.size:
                raise ValueError("custom values do not fit in window")
            q[lo:lo + vals.size] = vals
        return LatticeState(n_min=n_min, values=q, t=0.0)

    def support_state(self, pad: int = 2) -> LatticeState:
        """Minimal window holding the (numerically nonzero) support."""
        if self.kind == "gaussian":
            # |amplitude| * exp(-d^2/(2w^2)) < 1e-300 safely past d = 53 w
            half = int(np.ceil(53.0 * self.width)) + pad
            return self.realize(self.center - half, self.center + half)
        if self.kind == "custom_list":
            return self.realize(self.center - pad,
                                self.center + max(len(self.custom) - 1, 0) + pad)
        return self.realize(self.center - pad, self.center + pad)


def rhs(state: LatticeState) -> np.ndarray:
    """Time derivative (1-q_n^2)(q_{n+1}-q_{n-1}) with zero padding."""
    return _rhs_values(state.values)


def staggered(state: LatticeState) -> LatticeState:
    """Sign-alternated copy (-1)^n q_n at t = 0.

    The staggering maps solutions of the lattice equation to solutions of
    its time reversal; on the scattering side it rotates the spectral
    parameter by 90 degrees (r_staggered(z) = r(iz)/i).
    """
    signs = np.where(state.sites % 2 == 0, 1.0, -1.0)
    return LatticeState(n_min=state.n_min, values=state.values * signs, t=0.0)


def _rhs_values(q: np.ndarray) -> np.ndarray:
    shift_up = np.empty_like(q)
    shift_up[:-1] = q[1:]
    shift_up[-1] = 0.0
    shift_dn = np.empty_like(q)
    shift_dn[1:] = q[:-1]
    shift_dn[0] = 0.0
    return (1.0 - q * q) * (shift_up - shift_dn)


def conserved_c_inf(state: LatticeState) -> float:
    """Conserved product prod_n (1 - q_n^2) over the window."""
    return float(np.prod(1.0 - state.values ** 2))


def rho_zero(state: LatticeState) -> float:
    """Conserved sup bound rho_0 = (1 - c_inf)^(1/2); sup|q(t)| <= rho_0."""
    return float(np.sqrt(max(1.0 - conserved_c_inf(state), 0.0)))


def weighted_norm(state: LatticeState, s: int = 0) -> float:
    """Weighted l^1 norm sum_n (1+|n|)^s |q_n|."""
    if s < 0:
        raise ValueError("s must be a nonnegative integer")
    return float(np.sum((1.0 + np.abs(state.sites)) ** s * np.abs(state.values)))


def integrate(initial: LatticeState, t_end: float, dt: float,
              spill_tol: float = 1e-10) -> LatticeState:
    """Evolve with classical fixed-step RK4 from initial.t to t_end.

    The step count is chosen so the uniform step is as close as possible
    to the requested dt while landing exactly on t_end.  Each step checks
    three runtime guards:

      * sup|q| < 1 at every RK stage (else BlowupError),
      * sup|q| <= rho_0 + 1e-9 after the step (conserved bound; a
        violation again means the stepping broke down),
      * |q| below spill_tol on the outermost 10% of sites on each side
        (else SpillError: the window is too small).
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    span = t_end - initial.t
    if span == 0.0:
        return initial
    nsteps = max(1, int(round(abs(span) / dt)))
    h = span / nsteps

    q = initial.values.copy()
    bound = rho_zero(initial) + 1e-9
    edge = max(1, len(q) // 10)

    for _ in range(nsteps):
        k1 = _rhs_values(q)
        k2 = _rhs_values(_stage(q, 0.5 * h, k1))
        k3 = _rhs_values(_stage(q, 0.5 * h, k2))
        k4 = _rhs_values(_stage(q, h, k3))
        q += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        sup = np.max(np.abs(q))
        if sup >= 1.0:
            raise BlowupError(f"sup|q| = {sup:.6g} reached 1 during stepping")
        if sup > bound:
            raise BlowupError(
                f"sup|q| = {sup:.6g} exceeds conserved bound {bound:.6g}")
        spill = max(np.max(np.abs(q[:edge])), np.max(np.abs(q[-edge:])))
        if spill > spill_tol:
            raise SpillError(
                f"boundary amplitude {spill:.3g} exceeds spill tolerance "
                f"{spill_tol:.3g}; enlarge the window")

    return LatticeState(n_min=initial.n_min, values=q, t=initial.t + span)


def _stage(q: np.ndarray, h: float, k: np.ndarray) -> np.ndarray:
    y = q + h * k
    if np.max(np.abs(y)) >= 1.0:
        raise BlowupError("sup|q| reached 1 at an RK stage point")
    return y
