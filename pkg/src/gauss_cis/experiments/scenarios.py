"""Scenario content: each function turns a config into records and tables.

Scenario functions are pure apart from RNG seeded from the config; the
runner handles serialization, timing, and exit status.  Grid points within
a scenario are independent and may be evaluated by a thread pool; results
are reduced in a fixed order so reports are deterministic.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import fock, gauss_space
from ..errors import ConfigInvalidError
from ..gauss_space import CoefficientVector
from ..lattice import (
    AffineGrid,
    GaussianParam,
    PeriodicPerturbation,
    avdonin_verdict,
    build_sequence,
)
from .config import ScenarioConfig
from .sign_retrieval import half_grid, sign_retrieval_check

__all__ = ["ScenarioOutcome", "SCENARIOS"]


@dataclass
class ScenarioOutcome:
    passed: bool
    summary: dict
    tables: dict = field(default_factory=dict)   # name -> (header, rows)
    plots: dict = field(default_factory=dict)    # plotdata name -> (header, rows)


def _map(fn, items, threads: int):
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _require_sequence(config: ScenarioConfig):
    if config.sequence is None:
        raise ConfigInvalidError(f"scenario {config.scenario!r} needs a sequence")
    return build_sequence(config.sequence)


def _sweep(config, seq, sizes, frac, margin, orientation):
    param = GaussianParam(config.a, config.b)
    return gauss_space.frame_bounds(
        param,
        seq,
        sizes,
        interior_fraction=frac,
        edge_margin=margin,
        orientation=orientation,
    )


def _stability_pct(report) -> float:
    """Relative change of sigma_min across the last size doubling, percent."""
    prev, cur = report.entries[-2], report.entries[-1]
    return 100.0 * abs(cur.sigma_min - prev.sigma_min) / prev.sigma_min


def scenario_classify(config: ScenarioConfig) -> ScenarioOutcome:
    seq = _require_sequence(config)
    opts = config.options
    verdict = avdonin_verdict(
        seq,
        n_max=int(opts.get("n_max", 8)),
        margin=float(opts.get("margin", 1e-9)),
    )
    expect = opts.get("expect_pass")
    passed = True if expect is None else (verdict.passes == bool(expect))
    v = verdict.to_json()
    rows = [(
        config.sequence.get("kind"),
        verdict.separated,
        verdict.min_gap,
        verdict.enumerable,
        v["delta_sup"],
        verdict.window_len,
        v["best_window"]["delta_star"],
        verdict.passes,
        verdict.caveat,
    )]
    header = (
        "kind", "separated", "min_gap", "enumerable", "delta_sup",
        "window_len", "delta_star", "passes", "caveat",
    )
    return ScenarioOutcome(
        passed=passed,
        summary={"verdict": v, "expect_pass": expect},
        tables={"verdict": (header, rows)},
    )


def scenario_framebound_sweep(config: ScenarioConfig) -> ScenarioOutcome:
    seq = _require_sequence(config)
    opts = config.options
    sizes = config.sizes or (16, 32, 64)
    report = _sweep(
        config, seq, sizes,
        float(opts.get("interior_fraction", 2.0 / 3.0)),
        float(opts.get("edge_margin", 0.0)),
        opts.get("orientation", "interior_rows"),
    )
    header = ("size", "n_rows", "n_cols", "sigma_min", "sigma_max")
    rows = [(e.size, e.n_rows, e.n_cols, e.sigma_min, e.sigma_max) for e in report.entries]
    stability = opts.get("stability_pct")
    passed = True if stability is None else _stability_pct(report) <= float(stability)
    return ScenarioOutcome(
        passed=passed,
        summary={"report": report.to_json(), "stability_pct": _stability_pct(report)},
        tables={"frame_bounds": (header, rows)},
        plots={"sigma_min": (("size", "sigma_min"), [(e.size, e.sigma_min) for e in report.entries])},
    )


def scenario_critical_half(config: ScenarioConfig) -> ScenarioOutcome:
    opts = config.options
    seq = build_sequence(config.sequence) if config.sequence else PeriodicPerturbation((0.5,))
    sizes = config.sizes or (16, 32, 64)
    report = _sweep(
        config, seq, sizes,
        float(opts.get("interior_fraction", 1.0)),
        float(opts.get("edge_margin", 3.0)),
        opts.get("orientation", "interior_rows"),
    )
    max_ratio = float(opts.get("max_ratio", 0.5))
    ratios = report.sigma_min_ratios()
    passed = all(r <= max_ratio for _, _, r in ratios)
    header = ("size", "n_rows", "n_cols", "sigma_min", "sigma_max")
    rows = [(e.size, e.n_rows, e.n_cols, e.sigma_min, e.sigma_max) for e in report.entries]
    return ScenarioOutcome(
        passed=passed,
        summary={
            "report": report.to_json(),
            "max_ratio_allowed": max_ratio,
            "ratios": [{"from": x, "to": y, "ratio": r} for x, y, r in ratios],
        },
        tables={"frame_bounds": (header, rows)},
        plots={"sigma_min": (("size", "sigma_min"), [(e.size, e.sigma_min) for e in report.entries])},
    )


def scenario_kadets_sweep(config: ScenarioConfig) -> ScenarioOutcome:
    opts = config.options
    deltas = [float(d) for d in opts.get("deltas", (0.1, 0.3, 0.45))]
    critical = [float(d) for d in opts.get("critical_deltas", (0.5,))]
    sizes = config.sizes or (16, 32, 64)
    frac = float(opts.get("interior_fraction", 1.0))
    margin = float(opts.get("edge_margin", 3.0))
    stability = float(opts.get("stability_pct", 10.0))
    max_ratio = float(opts.get("max_ratio", 0.5))

    def run(d):
        return d, _sweep(
            config, PeriodicPerturbation((d,)), sizes, frac, margin, "interior_rows"
        )

    results = _map(run, sorted(deltas) + sorted(critical), config.threads)
    rows = []
    checks = []
    for d, report in results:
        for e in report.entries:
            rows.append((d, e.size, e.n_rows, e.n_cols, e.sigma_min, e.sigma_max))
        if d in critical:
            ratios = [r for _, _, r in report.sigma_min_ratios()]
            ok = all(r <= max_ratio for r in ratios)
            checks.append({"delta": d, "kind": "decay", "ratios": ratios, "ok": ok})
        else:
            pct = _stability_pct(report)
            ok = pct <= stability
            checks.append({"delta": d, "kind": "stable", "stability_pct": pct, "ok": ok})
    passed = all(ch["ok"] for ch in checks)
    header = ("delta", "size", "n_rows", "n_cols", "sigma_min", "sigma_max")
    plot = [(d, e.size, e.sigma_min) for d, rep in results for e in rep.entries]
    return ScenarioOutcome(
        passed=passed,
        summary={"checks": checks, "stability_pct": stability, "max_ratio": max_ratio},
        tables={"kadets": (header, rows)},
        plots={"sigma_min": (("delta", "size", "sigma_min"), plot)},
    )


def scenario_density_demo(config: ScenarioConfig) -> ScenarioOutcome:
    opts = config.options
    alphas = [float(x) for x in opts.get("alphas", (0.9, 1.1))]
    sizes = config.sizes or (16, 32, 64)
    frac = float(opts.get("interior_fraction", 2.0 / 3.0))
    margin = float(opts.get("edge_margin", 0.0))
    stability = float(opts.get("stability_pct", 10.0))

    def run(alpha):
        # oversampled grids measure the sampling-side bound (interior
        # coefficients); undersampled ones the interpolation-side bound
        orientation = "interior_cols" if alpha < 1.0 else "interior_rows"
        report = _sweep(config, AffineGrid(alpha), sizes, frac, margin, orientation)
        return alpha, orientation, report

    results = _map(run, sorted(alphas), config.threads)
    rows, checks = [], []
    for alpha, orientation, report in results:
        for e in report.entries:
            rows.append((alpha, orientation, e.size, e.n_rows, e.n_cols, e.sigma_min, e.sigma_max))
        pct = _stability_pct(report)
        checks.append({
            "alpha": alpha,
            "orientation": orientation,
            "stability_pct": pct,
            "ok": pct <= stability,
        })
    header = ("alpha", "orientation", "size", "n_rows", "n_cols", "sigma_min", "sigma_max")
    return ScenarioOutcome(
        passed=all(ch["ok"] for ch in checks),
        summary={"checks": checks, "stability_pct": stability},
        tables={"density": (header, rows)},
        plots={"sigma_min": (("alpha", "size", "sigma_min"),
                             [(a, e.size, e.sigma_min) for a, _, rep in results for e in rep.entries])},
    )


def scenario_kernel_asymptotic(config: ScenarioConfig) -> ScenarioOutcome:
    opts = config.options
    lo = float(opts.get("log_modulus_lo", -10.0))
    hi = float(opts.get("log_modulus_hi", 10.0))
    step = float(opts.get("step", 0.25))
    max_spread = float(opts.get("max_spread", 10.0))
    bracket = opts.get("bracket")
    ts = np.arange(lo, hi + 1e-12, step)

    def run(t):
        _, ratio = fock.kernel_norm(config.a, fock.LogPolarPoint(float(t), 0.0))
        return float(t), ratio

    rows = _map(run, ts, config.threads)
    ratios = np.array([r for _, r in rows])
    spread = float(ratios.max() / ratios.min())
    passed = spread <= max_spread
    if bracket is not None:
        passed = passed and bool(
            ratios.min() >= float(bracket[0]) and ratios.max() <= float(bracket[1])
        )
    return ScenarioOutcome(
        passed=passed,
        summary={
            "ratio_min": float(ratios.min()),
            "ratio_max": float(ratios.max()),
            "spread": spread,
            "max_spread": max_spread,
            "bracket": bracket,
        },
        tables={"kernel_ratio": (("log_modulus", "ratio"), rows)},
        plots={"kernel_ratio": (("log_modulus", "ratio"), rows)},
    )


def scenario_g0_estimate(config: ScenarioConfig) -> ScenarioOutcome:
    opts = config.options
    a = config.a
    lo = float(opts.get("log_modulus_lo", a))
    hi = float(opts.get("log_modulus_hi", 21.0 * a))
    step = float(opts.get("step", 0.1))
    n_angles = int(opts.get("n_angles", 8))
    exclusion = float(opts.get("exclusion", 0.1))
    bracket = opts.get("bracket")

    zeros = fock.GeneratingProduct.unperturbed(a, int(np.ceil((hi + 40) / (2 * a))))
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    points = []
    for lm in np.arange(lo, hi + 1e-12, step):
        for ang in angles:
            p = fock.LogPolarPoint(float(lm), float(ang))
            rel = fock.log_distance_to_zeros(p, zeros.zero_log_moduli) - lm
            if rel >= np.log(exclusion):
                points.append(p)

    def run(p):
        return p.log_modulus, p.argument, fock.g0_estimate_ratio(a, p)

    rows = _map(run, points, config.threads)
    ratios = np.array([r for _, _, r in rows])
    summary = {
        "ratio_min": float(ratios.min()),
        "ratio_max": float(ratios.max()),
        "n_points": len(rows),
        "bracket": bracket,
    }
    passed = True
    if bracket is not None:
        passed = bool(
            ratios.min() >= float(bracket[0]) and ratios.max() <= float(bracket[1])
        )
    return ScenarioOutcome(
        passed=passed,
        summary=summary,
        tables={"g0_ratio": (("log_modulus", "argument", "ratio"), rows)},
        plots={"g0_ratio": (("log_modulus", "argument", "ratio"), rows)},
    )


def scenario_fock_consistency(config: ScenarioConfig) -> ScenarioOutcome:
    opts = config.options
    n_seeds = int(opts.get("n_seeds", 5))
    lambdas = [float(x) for x in opts.get("lambdas", np.linspace(-5.0, 5.0, 11))]
    b_values = [float(x) for x in opts.get("b_values", (0.0, 2.0))]
    n_lo, n_hi = (int(x) for x in opts.get("coeff_range", (1, 16)))
    tol = config.tolerance("gap", 1e-9)

    tasks = []
    for i in range(n_seeds):
        rng = np.random.default_rng([config.seed, i])
        size = n_hi - n_lo + 1
        vals = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        coeffs = CoefficientVector(n_lo, vals)
        for b in b_values:
            for lam in lambdas:
                tasks.append((i, b, lam, coeffs))

    def run(task):
        i, b, lam, coeffs = task
        _, _, gap = fock.consistency_identity(GaussianParam(config.a, b), coeffs, lam)
        return i, b, lam, gap

    rows = _map(run, tasks, config.threads)
    worst = max(r[3] for r in rows)
    return ScenarioOutcome(
        passed=worst < tol,
        summary={"max_gap": worst, "tolerance": tol, "n_checks": len(rows)},
        tables={"consistency": (("seed_index", "b", "lambda", "gap"), rows)},
        plots={"gap": (("lambda", "gap"), [(r[2], r[3]) for r in rows])},
    )


def scenario_sign_retrieval(config: ScenarioConfig) -> ScenarioOutcome:
    opts = config.options
    trials = int(opts.get("trials", 50))
    window = int(opts.get("window", 12))
    coeff_start = int(opts.get("coeff_start", 0))
    coeff_count = int(opts.get("coeff_count", 5))
    amplitude = float(opts.get("delta_amplitude", 0.2))
    node_start = int(opts.get("node_start", -1))
    residual_tol = config.tolerance("residual", 1e-8)
    match_tol = config.tolerance("match", 1e-8)

    def run(t):
        rng = np.random.default_rng([config.seed, t])
        vals = rng.standard_normal(coeff_count)
        deltas = rng.uniform(-amplitude, amplitude, window)
        seq = half_grid(deltas, node_start)
        res = sign_retrieval_check(
            config.a,
            CoefficientVector(coeff_start, vals.astype(complex)),
            seq,
            residual_tol=residual_tol,
            match_tol=match_tol,
        )
        return (
            t, res.passes, res.n_survivors, res.max_survivor_residual,
            res.dilated_delta_star, res.dilated_condition_ok,
        )

    rows = _map(run, range(trials), config.threads)
    n_pass = sum(1 for r in rows if r[1])
    header = (
        "trial", "passes", "n_survivors", "max_survivor_residual",
        "dilated_delta_star", "dilated_condition_ok",
    )
    return ScenarioOutcome(
        passed=n_pass == trials,
        summary={"trials": trials, "passed_trials": n_pass, "window": window},
        tables={"sign_retrieval": (header, rows)},
    )


SCENARIOS = {
    "classify": scenario_classify,
    "framebound-sweep": scenario_framebound_sweep,
    "critical-half": scenario_critical_half,
    "kadets-sweep": scenario_kadets_sweep,
    "density-demo": scenario_density_demo,
    "kernel-asymptotic": scenario_kernel_asymptotic,
    "g0-estimate": scenario_g0_estimate,
    "fock-consistency": scenario_fock_consistency,
    "sign-retrieval": scenario_sign_retrieval,
}
