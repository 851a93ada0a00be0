"""End-to-end experiment harness.

Runs the full chain for a sweep of rays and times: integrate the lattice
directly, build the scattering data of the initial profile, evaluate the
leading-order asymptotic value, and record the comparison.  Also hosts
the machine-readable emitters and the invariant self-test used by the
CLI.
"""

from __future__ import annotations

import concurrent.futures
import json
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import lattice, model, phase, scattering, weights
from .errors import ConfigError, DmkdvError
from .lattice import InitialProfile, integrate, staggered
from .model import DEFAULT_SIGN_CONVENTION, SIGN_CONVENTIONS
from .phase import RayParams, stationary_points
from .scattering import reflection_evaluator, scattering_coefficients

__all__ = [
    "RunConfig",
    "ComparisonRecord",
    "run_compare",
    "selftest",
    "emit",
    "CSV_HEADER",
]

CSV_HEADER = "n,t,v,q_direct,q_asym,abs_err,scaled_err,imag_residual"

_EMIT_FIELDS = ("n", "t", "v", "q_direct", "q_asym", "abs_err",
                "scaled_err", "imag_residual")


@dataclass(frozen=True)
class RunConfig:
    """Sweep definition; see `from_dict` for the JSON schema."""

    profile: InitialProfile
    v_list: tuple = (0.5,)
    t_list: tuple = (100.0, 200.0, 400.0, 800.0)
    dt: float = 0.005
    window_margin: float = 150.0
    grid_size: int = 256
    quadrature_tol: float = 1e-11
    realness_tol: float = 0.02
    spill_tol: float = 1e-10
    sign_convention: str = DEFAULT_SIGN_CONVENTION
    v_max: float = phase.DEFAULT_V_MAX
    output_path: str = "compare.csv"
    output_format: str = "csv"
    threads: int = 1

    def __post_init__(self):
        if self.dt <= 0:
            raise ConfigError("dt must be positive")
        if any(abs(v) > self.v_max for v in self.v_list):
            raise ConfigError(f"every |v| must be <= v_max = {self.v_max}")
        if list(self.t_list) != sorted(self.t_list) or len(self.t_list) == 0:
            raise ConfigError("times must be a nonempty increasing list")
        if any(t <= 0 for t in self.t_list):
            raise ConfigError("times must be positive")
        if self.sign_convention not in SIGN_CONVENTIONS:
            raise ConfigError(
                f"sign_convention must be one of {SIGN_CONVENTIONS}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("output format must be csv or json")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        """Build from the JSON schema:

        {"profile": {"kind", "amplitude", "width", "center"},
         "rays": [v...], "times": [t...], "dt": ..., "grid_size": ...,
         "window_margin": ..., "tolerances": {"quadrature", "realness",
         "spill"}, "sign_convention": ..., "threads": ...,
         "output": {"path", "format"}}
        """
        try:
            prof = dict(d.get("profile", {}))
            profile = InitialProfile(
                kind=prof.get("kind", "single_site"),
                amplitude=float(prof.get("amplitude", 0.3)),
                width=float(prof.get("width", 1.0)),
                center=int(prof.get("center", 0)),
                custom=tuple(prof.get("custom", ())),
            )
            tols = dict(d.get("tolerances", {}))
            out = dict(d.get("output", {}))
            kwargs = dict(
                profile=profile,
                dt=float(d.get("dt", cls.dt)),
                window_margin=float(d.get("window_margin", cls.window_margin)),
                grid_size=int(d.get("grid_size", cls.grid_size)),
                quadrature_tol=float(tols.get("quadrature", cls.quadrature_tol)),
                realness_tol=float(tols.get("realness", cls.realness_tol)),
                spill_tol=float(tols.get("spill", cls.spill_tol)),
                sign_convention=d.get("sign_convention", DEFAULT_SIGN_CONVENTION),
                v_max=float(d.get("v_max", phase.DEFAULT_V_MAX)),
                output_path=out.get("path", cls.output_path),
                output_format=out.get("format", cls.output_format),
                threads=int(d.get("threads", cls.threads)),
            )
            if "rays" in d:
                kwargs["v_list"] = tuple(float(v) for v in d["rays"])
            if "times" in d:
                kwargs["t_list"] = tuple(float(t) for t in d["times"])
        except (TypeError, ValueError, KeyError) as exc:
            raise ConfigError(f"bad configuration: {exc}") from exc
        return cls(**kwargs)

    def to_dict(self) -> dict:
        p = self.profile
        return {
            "profile": {"kind": p.kind, "amplitude": p.amplitude,
                        "width": p.width, "center": p.center,
                        "custom": list(p.custom)},
            "rays": list(self.v_list),
            "times": list(self.t_list),
            "dt": self.dt,
            "window_margin": self.window_margin,
            "grid_size": self.grid_size,
            "tolerances": {"quadrature": self.quadrature_tol,
                           "realness": self.realness_tol,
                           "spill": self.spill_tol},
            "sign_convention": self.sign_convention,
            "v_max": self.v_max,
            "threads": self.threads,
            "output": {"path": self.output_path, "format": self.output_format},
        }


@dataclass(frozen=True)
class ComparisonRecord:
    """One (n, t) comparison row; failed rows carry NaNs and a reason."""

    n: int
    t: float
    v: float
    q_direct: float
    q_asym: float
    abs_err: float
    scaled_err: float
    imag_residual: float
    fail_reason: str | None = None
    wall_time: float = 0.0


def probe_site(v: float, t: float, v_max: float) -> int:
    """n = round(v t), nudged toward 0 when rounding overshoots v_max."""
    n = round(v * t)
    if abs(n) > v_max * t:
        n = int(math.floor(abs(v) * t)) * (1 if v >= 0 else -1)
    return n


def direct_value(config: RunConfig, v: float, t: float) -> tuple:
    """Integrate the profile to time t; return (n, q_n(t)).

    Window half-width is 2.5 t + margin: the light cone has speed 2, and
    the extra half-t keeps the outermost-10% spill-guard region strictly
    outside the cone, where only the (superexponentially small) tail and
    integrator front noise live.
    """
    n = probe_site(v, t, config.v_max)
    center = config.profile.center
    half = int(math.ceil(2.5 * t + config.window_margin))
    state0 = config.profile.realize(center - half, center + half)
    final = integrate(state0, t, config.dt, spill_tol=config.spill_tol)
    return n, final.value_at(n)


def asymptotic_value(config: RunConfig, v: float, t: float,
                     sign_convention: str | None = None,
                     check_realness: bool = True) -> model.AsymptoticResult:
    """Leading-order asymptotic value of q_n(t) at n = round(v t).

    The cross-sum functional R (leading_term) reconstructs the lattice
    field in a staggered, site-shifted gauge relative to the transfer
    recursions used for the scattering data: under our conventions

        q_n(t) = (-1)^n R(n+1, t; r_u),   u_k = (-1)^k q_k(0).

    The gauge is pinned by two independent oracles: direct integration,
    and the exact linearization q_n = q_0 (-1)^n J_n(2t) for small
    single-site data (Bessel asymptotics fix both the site shift and the
    sign alternation; see tests).
    """
    n = probe_site(v, t, config.v_max)
    # n+1 may overshoot v_max by 1/t; the merging-point guard still holds
    v_int = max(config.v_max, abs(n + 1) / t + 1e-12)
    ray = RayParams(n=n + 1, t=t, v_max=min(v_int, 1.949))
    r_eval = reflection_evaluator(staggered(config.profile.support_state()))
    stat = stationary_points(ray)
    coeffs = weights.coefficient_set(r_eval, stat, tol=config.quadrature_tol)
    crosses = model.cross_solutions(
        r_eval, stat, coeffs, sign_convention or config.sign_convention)
    calibration = config.realness_tol if check_realness else None
    res = model.leading_term(ray, stat, coeffs, crosses,
                             realness_calibration=calibration)
    return replace(res, n=n, q_asym=(-1) ** n * res.q_asym)


def _compare_row(config: RunConfig, v: float, t: float,
                 compute_direct: bool = True,
                 compute_asym: bool = True) -> ComparisonRecord:
    started = time.perf_counter()
    n = probe_site(v, t, config.v_max)
    q_direct = math.nan
    q_asym = math.nan
    imag_residual = math.nan
    try:
        if compute_direct:
            n, q_direct = direct_value(config, v, t)
        if compute_asym:
            result = asymptotic_value(config, v, t)
            q_asym = result.q_asym
            imag_residual = result.imag_residual
        abs_err = (abs(q_direct - q_asym)
                   if compute_direct and compute_asym else math.nan)
        scaled_err = abs_err * t / math.log(t) if not math.isnan(abs_err) else math.nan
        reason = None
    except DmkdvError as exc:
        abs_err = scaled_err = q_direct = q_asym = imag_residual = math.nan
        reason = f"{type(exc).__name__}: {exc}"
    return ComparisonRecord(
        n=n, t=t, v=v, q_direct=q_direct, q_asym=q_asym, abs_err=abs_err,
        scaled_err=scaled_err, imag_residual=imag_residual,
        fail_reason=reason, wall_time=time.perf_counter() - started)


def _row_worker(args) -> ComparisonRecord:
    config_dict, v, t, compute_direct, compute_asym = args
    config = RunConfig.from_dict(config_dict)
    return _compare_row(config, v, t, compute_direct, compute_asym)


def run_compare(config: RunConfig, compute_direct: bool = True,
                compute_asym: bool = True) -> list:
    """Full sweep: one record per (v, t), v-major, t increasing.

    Row failures (spill, quadrature, convention) mark the row failed and
    leave every other row untouched.  Rows are independent and pure, so
    with threads > 1 they run in a process pool; assembly order is fixed
    regardless of parallelism.
    """
    jobs = [(config.to_dict(), v, t, compute_direct, compute_asym)
            for v in config.v_list for t in config.t_list]
    if config.threads > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(
                max_workers=config.threads) as pool:
            return list(pool.map(_row_worker, jobs))
    return [_row_worker(job) for job in jobs]


# ---------------------------------------------------------------------------
# emitters

def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))  # shortest round-trip decimal


def emit(records, path: str, fmt: str = "csv") -> str:
    """Write records as CSV (pinned header) or JSON; returns the path.

    Output is byte-identical for identical records.  Failed rows emit
    NaN columns (null in JSON).
    """
    if not records:
        raise ValueError("no records to emit; refusing to create the file")
    if fmt == "csv":
        lines = [CSV_HEADER]
        for rec in records:
            lines.append(",".join(_fmt(getattr(rec, name))
                                  for name in _EMIT_FIELDS))
        payload = "\n".join(lines) + "\n"
    elif fmt == "json":
        rows = []
        for rec in records:
            row = {}
            for name in _EMIT_FIELDS:
                value = getattr(rec, name)
                if isinstance(value, float) and math.isnan(value):
                    row[name] = None
                else:
                    row[name] = value
            rows.append(row)
        payload = json.dumps(rows, indent=2) + "\n"
    else:
        raise ValueError("format must be csv or json")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(payload)
    return path


def emit_plot_data(records, path_stem: str) -> list:
    """Gnuplot-compatible two-column (t, abs_err) file per ray."""
    paths = []
    by_ray = {}
    for rec in records:
        by_ray.setdefault(rec.v, []).append(rec)
    for v, rows in by_ray.items():
        path = f"{path_stem}_ray{v:g}.dat"
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("# t abs_err\n")
            for rec in rows:
                fh.write(f"{_fmt(rec.t)} {_fmt(rec.abs_err)}\n")
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# self-test

def _check(name: str, measured: float, threshold: float,
           larger_is_fail: bool = True) -> dict:
    ok = measured < threshold if larger_is_fail else measured >= threshold
    return {"name": name, "pass": bool(ok),
            "measured": float(measured), "threshold": float(threshold)}


def selftest(sign_convention: str = DEFAULT_SIGN_CONVENTION,
             seed: int = 20240901,
             quadrature_tol: float = 1e-11) -> dict:
    """Run the invariant suite and the sign-convention audit.

    Returns {"pass": bool, "sign_convention": ..., "checks": [
    {"name", "pass", "measured", "threshold"}, ...]}; every check also
    records its wall time.  Loosening quadrature_tol degrades the
    delta-product check proportionally (it is the knob under test there).
    """
    rng = np.random.default_rng(seed)
    checks = []

    def run(fn):
        started = time.perf_counter()
        results = fn()
        elapsed = time.perf_counter() - started
        for res in results:
            res["seconds"] = round(elapsed / len(results), 4)
            checks.append(res)

    def gamma_checks():
        worst = max(
            abs(model.complex_gamma(1.0) - 1.0),
            abs(model.complex_gamma(0.5) - math.sqrt(math.pi)),
            abs(abs(model.complex_gamma(0.25j)) ** 2
                - math.pi / (0.25 * math.sinh(math.pi * 0.25))),
        )
        return [_check("gamma_identities", worst, 1e-12)]

    def modulus_checks():
        worst = 0.0
        for nu in (0.001, 0.01, 0.1, 0.5):
            r_mod = math.sqrt(1.0 - math.exp(-2.0 * math.pi * nu))
            r_val = r_mod * np.exp(0.3j)
            for j in (1, 2, 3, 4):
                m1 = model.m1_entry(nu, r_val, j, sign_convention)
                worst = max(worst, abs(abs(m1) - math.sqrt(nu)))
        return [_check("model_modulus_sqrt_nu", worst, 1e-10)]

    def unitarity_checks():
        vals = rng.uniform(-0.5, 0.5, 16)
        state = lattice.LatticeState(n_min=-8, values=vals)
        c_inf = lattice.conserved_c_inf(state)
        worst = 0.0
        for k in range(256):
            pt = scattering.UnitCirclePoint.from_theta(2 * math.pi * k / 256)
            sd = scattering_coefficients(state, pt)
            worst = max(worst, abs(abs(sd.a) ** 2 - abs(sd.b) ** 2 - c_inf))
        return [_check("unitarity", worst, 1e-10)]

    def phase_checks():
        worst_d1 = 0.0
        worst_identity = 0.0
        for _ in range(100):
            v = rng.uniform(-1.8, 1.8)
            t = rng.uniform(1.0, 1000.0)
            ray = RayParams(n=probe_site(v, t, 1.8), t=t)
            stat = stationary_points(ray)
            for k in range(4):
                worst_d1 = max(worst_d1, abs(
                    phase.phase_derivative(stat.S[k], ray)))
                worst_identity = max(worst_identity, abs(
                    stat.phi_dd[k] * stat.beta[k] ** 2
                    - (-1) ** (k + 2) * 0.5j))
        return [_check("phase_first_derivative", worst_d1, 1e-10),
                _check("phase_beta_identity", worst_identity, 1e-12)]

    def delta_product_checks():
        profile = InitialProfile(kind="single_site", amplitude=0.3)
        r_eval = reflection_evaluator(profile.support_state())
        stat = stationary_points(RayParams(n=50, t=100.0))
        worst = 0.0
        radii = [0.3 + 0.55 * (k / 9.0) for k in range(10)] \
            + [1.15 + 0.85 * (k / 9.0) for k in range(10)]
        for k, radius in enumerate(radii):
            zp = radius * np.exp(2j * math.pi * k / 20.0)
            d = weights.delta_at(r_eval, stat, zp, tol=quadrature_tol)
            prod = 1.0 + 0.0j
            for j in (1, 2, 3, 4):
                prod *= weights.delta_j_at(r_eval, stat, j, zp,
                                           tol=quadrature_tol)
            worst = max(worst, abs(d - prod))
        return [_check("delta_product_identity", worst, 1e-9)]

    def integrator_checks():
        profile = InitialProfile(kind="single_site", amplitude=0.3)
        state0 = profile.realize(-40, 40)
        ref = integrate(state0, 5.0, 0.0125)
        errs = []
        for dt in (0.2, 0.1):
            got = integrate(state0, 5.0, dt)
            errs.append(np.max(np.abs(got.values - ref.values)))
        order = math.log2(errs[0] / errs[1])
        drift_state0 = profile.realize(-240, 240)
        final = integrate(drift_state0, 50.0, 0.01)
        drift = abs(lattice.conserved_c_inf(final)
                    - lattice.conserved_c_inf(drift_state0))
        return [_check("rk4_order_low", order, 3.7, larger_is_fail=False),
                _check("rk4_order_high", order, 4.3),
                _check("c_inf_drift_t50", drift, 1e-8)]

    def convention_checks():
        config = RunConfig(profile=InitialProfile(kind="single_site",
                                                  amplitude=0.3))
        t = 800.0
        scale = t ** -0.5
        ratios = {}
        for conv in SIGN_CONVENTIONS:
            res = asymptotic_value(config, 0.5, t, sign_convention=conv,
                                   check_realness=False)
            ratios[conv] = res.imag_residual / scale
        rejected = [c for c in SIGN_CONVENTIONS if c != sign_convention][0]
        return [
            _check(f"realness_{sign_convention}", ratios[sign_convention], 0.05),
            _check(f"realness_rejected_{rejected}", ratios[rejected], 0.05,
                   larger_is_fail=False),
        ]

    for fn in (gamma_checks, modulus_checks, unitarity_checks, phase_checks,
               delta_product_checks, integrator_checks, convention_checks):
        run(fn)

    return {
        "sign_convention": sign_convention,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }
