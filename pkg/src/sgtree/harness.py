"""Experiment runner: ties table, sampler and predictions together.

Each experiment builds the Z-table it needs, draws seeded samples, compares
empirical statistics against the closed-form or variational predictions,
and emits a self-contained report: the echoed spec plus the RNG identifier
is enough to reproduce every number bit for bit.  Verdicts are pure
functions of the recorded statistics and the spec tolerances.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import asymptotics
from .partition import ZTable, build_ztable
from .sampler import (
    RNG_ALGORITHM,
    RandomSource,
    rotate_word,
    sample_composition,
)
from .trees import PlaneTree, branch_sizes_word, left_ball, star_left_ball
from .weights import WeightSequence

STAR_CONVERGENCE = "star_convergence"
POISSON_SURPLUS = "poisson_surplus"
DEGREE_BOUNDS = "degree_bounds"
GAUSSIAN_FLUCTUATIONS = "gaussian_fluctuations"
LOGZ_EXPANSION = "logz_expansion"
STAR_DOMINANCE = "star_dominance"
IDENTITIES = "identities"

EXPERIMENTS = (
    STAR_CONVERGENCE,
    POISSON_SURPLUS,
    DEGREE_BOUNDS,
    GAUSSIAN_FLUCTUATIONS,
    LOGZ_EXPANSION,
    STAR_DOMINANCE,
    IDENTITIES,
)

DEFAULT_TOLERANCES: dict[str, dict[str, float]] = {
    STAR_CONVERGENCE: {"min_final_fraction": 0.85, "trend_slack": 0.05},
    POISSON_SURPLUS: {"zn_rel_error": 0.01, "tv_poisson": 0.05, "min_branch_frequency": 0.95},
    DEGREE_BOUNDS: {
        "min_degree_bound_frequency": 0.99,
        "min_branch_bound_frequency": 0.99,
        "ratio_lo": 0.8,
        "ratio_hi": 1.2,
        "min_ratio_frequency": 0.95,
        "tv_poisson": 0.05,
    },
    GAUSSIAN_FLUCTUATIONS: {"ks": 0.03, "max_abs_corr": 0.05},
    LOGZ_EXPANSION: {"residual_coeff": 5.0, "coarse_lo": 0.5, "coarse_hi": 1.5},
    STAR_DOMINANCE: {"zn_rel_error": 0.01, "min_star_frequency": 0.99},
    IDENTITIES: {"max_sum_residual": 1e-9},
}


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one experiment run."""

    experiment: str
    weights: dict
    n_list: tuple[int, ...]
    samples: int = 1000
    seed: int = 0
    stream: int = 0
    radius: int = 3  # star_convergence only
    eps_list: tuple[float, ...] = (0.1, 0.5)  # identities only
    exact_upto: int = 0
    truncate: bool = False
    allow_large: bool = False
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        object.__setattr__(self, "eps_list", tuple(float(e) for e in self.eps_list))
        if not self.n_list or min(self.n_list) < 1:
            raise ValueError("n_list must contain positive sizes")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if any(v <= 0 for v in self.tolerances.values()):
            raise ValueError("tolerances must be positive")
        WeightSequence.from_config(self.weights)  # validate early

    def weight_sequence(self) -> WeightSequence:
        return WeightSequence.from_config(self.weights)

    def tolerance(self, name: str) -> float:
        if name in self.tolerances:
            return float(self.tolerances[name])
        return DEFAULT_TOLERANCES[self.experiment][name]

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["n_list"] = list(self.n_list)
        d["eps_list"] = list(self.eps_list)
        return d

    @staticmethod
    def from_dict(d: dict) -> "ExperimentSpec":
        return ExperimentSpec(**d)

    @staticmethod
    def from_json(text: str) -> "ExperimentSpec":
        return ExperimentSpec.from_dict(json.loads(text))


def _json_coerce(obj):
    """numpy scalars/arrays slip into stats; JSON needs plain types."""
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    op: str  # "<=" or ">="

    @property
    def passed(self) -> bool:
        if self.op == "<=":
            return bool(self.value <= self.threshold)
        if self.op == ">=":
            return bool(self.value >= self.threshold)
        raise ValueError(f"unknown op {self.op!r}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "threshold": self.threshold,
            "op": self.op,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ExperimentReport:
    spec: ExperimentSpec
    stats: dict
    predictions: dict
    checks: tuple[CheckResult, ...]
    wall_seconds: float
    rng_algorithm: str = RNG_ALGORITHM

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "experiment": self.spec.experiment,
            "spec": self.spec.to_dict(),
            "rng_algorithm": self.rng_algorithm,
            "stats": self.stats,
            "predictions": self.predictions,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "wall_seconds": self.wall_seconds,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=_json_coerce)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json() + "\n")


# -- sampling statistics -------------------------------------------------------


@dataclass
class SampleBatch:
    """Per-sample statistics of one batch of exact tree draws.

    Degree counts follow the handshake convention: every vertex of the
    degree is counted, s included, and the implicit root r contributes to
    degree 1.
    """

    n_edges: int
    sigma_s: np.ndarray
    degree_counts: dict[int, np.ndarray]  # degree -> count per sample
    max_other_degree: np.ndarray  # largest degree over vertices != s
    max_branch_size: np.ndarray
    branch_size2_count: np.ndarray
    is_star: np.ndarray

    def emit_csv(self, path: str) -> None:
        degrees = sorted(self.degree_counts)
        with open(path, "w", encoding="ascii") as fh:
            cols = ["sigma_s"] + [f"x{d}" for d in degrees] + ["max_other_degree", "max_branch_size"]
            fh.write(",".join(cols) + "\n")
            for row in range(len(self.sigma_s)):
                vals = [str(int(self.sigma_s[row]))]
                vals += [str(int(self.degree_counts[d][row])) for d in degrees]
                vals += [str(int(self.max_other_degree[row])), str(int(self.max_branch_size[row]))]
                fh.write(",".join(vals) + "\n")


def collect_samples(
    table: ZTable,
    n_edges: int,
    count: int,
    gen: np.random.Generator,
    track_degrees: tuple[int, ...] = (2, 3, 4),
) -> SampleBatch:
    """Draw `count` trees and record the statistics every runner consumes."""
    sigma = np.empty(count, dtype=np.int64)
    max_other = np.empty(count, dtype=np.int64)
    max_branch = np.empty(count, dtype=np.int64)
    size2 = np.empty(count, dtype=np.int64)
    star = np.empty(count, dtype=bool)
    counts = {d: np.zeros(count, dtype=np.int64) for d in track_degrees}
    for j in range(count):
        comp = sample_composition(table, n_edges, n_edges - 1, gen)
        word = rotate_word(comp)
        sigma[j] = word[0] + 1
        rest = word[1:]
        max_other[j] = (max(rest) + 1) if rest else 1
        sizes = branch_sizes_word(word)
        max_branch[j] = max(sizes) if sizes else 0
        size2[j] = sizes.count(2)
        star[j] = word[0] == n_edges - 1
        for d in track_degrees:
            counts[d][j] = word.count(d - 1) + (1 if d == 1 else 0)  # r has degree 1
    return SampleBatch(n_edges, sigma, counts, max_other, max_branch, size2, star)


def _tv_against_poisson(values: np.ndarray, mean: float) -> float:
    """Total variation between an empirical integer sample and Poisson(mean)."""
    n = len(values)
    top = int(values.max()) if n else 0
    emp = np.bincount(values.astype(int), minlength=top + 1) / n
    ks = np.arange(top + 1)
    log_pmf = ks * math.log(mean) - mean - np.array([math.lgamma(k + 1.0) for k in ks])
    pmf = np.exp(log_pmf)
    tail = max(0.0, 1.0 - pmf.sum())
    return float(0.5 * (np.abs(emp - pmf).sum() + tail))


def _ks_to_standard_normal(z: np.ndarray) -> float:
    """sup-distance between the empirical cdf of z and the N(0,1) cdf."""
    z = np.sort(np.asarray(z, dtype=float))
    n = len(z)
    cdf = 0.5 * (1.0 + np.array([math.erf(v / math.sqrt(2.0)) for v in z]))
    upper = np.abs(cdf - np.arange(1, n + 1) / n).max()
    lower = np.abs(cdf - np.arange(0, n) / n).max()
    return float(max(upper, lower))


# -- runners --------------------------------------------------------------------


def run_experiment(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    runner = {
        STAR_CONVERGENCE: run_star_convergence,
        POISSON_SURPLUS: run_poisson_surplus,
        DEGREE_BOUNDS: run_degree_bounds,
        GAUSSIAN_FLUCTUATIONS: run_gaussian_fluctuations,
        LOGZ_EXPANSION: run_logz_expansion,
        STAR_DOMINANCE: run_star_dominance,
        IDENTITIES: run_identities,
    }[spec.experiment]
    return runner(spec, emit_csv_dir=emit_csv_dir, table=table)


def _build_table(spec: ExperimentSpec, table: Optional[ZTable] = None) -> ZTable:
    """Build per spec, or validate and reuse a shared prebuilt table."""
    if table is not None:
        if table.ws.to_config() != spec.weights:
            raise ValueError("shared table was built for a different weight family")
        if table.n_max < max(spec.n_list):
            raise ValueError("shared table is too small for this spec")
        return table
    return build_ztable(
        spec.weight_sequence(),
        max(spec.n_list),
        exact_upto=spec.exact_upto,
        truncate=spec.truncate,
        allow_large=spec.allow_large,
    )


def _maybe_emit(batch: SampleBatch, spec: ExperimentSpec, emit_csv_dir: Optional[str]) -> None:
    if emit_csv_dir:
        os.makedirs(emit_csv_dir, exist_ok=True)
        batch.emit_csv(
            os.path.join(emit_csv_dir, f"{spec.experiment}_n{batch.n_edges}.csv")
        )


def run_star_convergence(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    """Fraction of samples whose left ball already matches the limiting
    star's; must trend upward in N and clear a threshold at the largest N."""
    t0 = time.perf_counter()
    table = _build_table(spec, table)
    gen = RandomSource(spec.seed, spec.stream).generator()
    target = star_left_ball(spec.radius).word
    fractions = []
    for n_edges in spec.n_list:
        hits = 0
        for _ in range(spec.samples):
            comp = sample_composition(table, n_edges, n_edges - 1, gen)
            t = PlaneTree(tuple(rotate_word(comp)))
            hits += left_ball(t, spec.radius).word == target
        fractions.append(hits / spec.samples)
    slack = spec.tolerance("trend_slack")
    worst_drop = max(
        (fractions[i] - fractions[i + 1] for i in range(len(fractions) - 1)),
        default=0.0,
    )
    checks = (
        CheckResult("left_ball_fraction_final", fractions[-1], spec.tolerance("min_final_fraction"), ">="),
        CheckResult("left_ball_fraction_worst_drop", worst_drop, slack, "<="),
        CheckResult("left_ball_fraction_endpoint_trend", fractions[-1] - fractions[0], 0.0, ">="),
    )
    stats = {"radius": spec.radius, "n_list": list(spec.n_list), "fractions": fractions}
    return ExperimentReport(spec, stats, {}, checks, time.perf_counter() - t0)


def run_poisson_surplus(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    """Pinned-w_2 family: Z_N against e^lam (N-1)!, the surplus N - sigma(s)
    against Poisson(lam), and the all-branches-in-{1,2} event."""
    t0 = time.perf_counter()
    ws = spec.weight_sequence()
    if ws.family != "lambda_factorial":
        raise ValueError("poisson_surplus runs on the lambda_factorial family")
    lam = float(ws.lam)
    table = _build_table(spec, table)
    gen = RandomSource(spec.seed, spec.stream).generator()
    n_edges = max(spec.n_list)

    log_pred = asymptotics.predict_log_zn(asymptotics.REGIME_LAMBDA, lam, n_edges)
    zn_rel_error = abs(math.expm1(table.log_z_n(n_edges) - log_pred))

    batch = collect_samples(table, n_edges, spec.samples, gen)
    _maybe_emit(batch, spec, emit_csv_dir)
    surplus = n_edges - batch.sigma_s
    tv = _tv_against_poisson(surplus, lam)
    # sizes in {1,2} forces exactly N - sigma(s) twos, but check it literally
    consistent = (batch.max_branch_size <= 2) & (batch.branch_size2_count == surplus)
    branch_freq = float(consistent.mean())

    checks = (
        CheckResult("zn_rel_error", zn_rel_error, spec.tolerance("zn_rel_error"), "<="),
        CheckResult("tv_surplus_poisson", tv, spec.tolerance("tv_poisson"), "<="),
        CheckResult("branch_structure_frequency", branch_freq, spec.tolerance("min_branch_frequency"), ">="),
    )
    stats = {
        "n_edges": n_edges,
        "lam": lam,
        "log_zn": table.log_z_n(n_edges),
        "zn_rel_error": zn_rel_error,
        "tv_surplus_poisson": tv,
        "branch_structure_frequency": branch_freq,
        "surplus_histogram": np.bincount(surplus).tolist(),
    }
    return ExperimentReport(spec, stats, {"log_zn": log_pred}, checks, time.perf_counter() - t0)


def run_degree_bounds(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    """Factorial-power family: degree and branch-size cutoffs at K+1, the
    X_2 concentration ratio, and the boundary Poisson law when 1/alpha is
    an integer."""
    t0 = time.perf_counter()
    ws = spec.weight_sequence()
    if ws.family != "factorial_alpha" or not 0 < ws.alpha < 1:
        raise ValueError("degree_bounds runs on factorial_alpha with alpha in (0, 1)")
    alpha = ws.alpha
    k = asymptotics.degree_cutoff(alpha)
    table = _build_table(spec, table)
    gen = RandomSource(spec.seed, spec.stream).generator()
    n_edges = max(spec.n_list)

    batch = collect_samples(table, n_edges, spec.samples, gen, track_degrees=(2, 3, 4, k + 1))
    _maybe_emit(batch, spec, emit_csv_dir)

    deg_freq = float((batch.max_other_degree <= k + 1).mean())
    branch_freq = float((batch.max_branch_size <= k + 1).mean())
    scale_1 = asymptotics.degree_count_scale(alpha, n_edges, 1)
    ratio = batch.degree_counts[2] / scale_1
    lo, hi = spec.tolerance("ratio_lo"), spec.tolerance("ratio_hi")
    ratio_freq = float(((ratio >= lo) & (ratio <= hi)).mean())
    surplus_scaled = (n_edges - batch.sigma_s) / n_edges ** (1.0 - alpha)

    stats = {
        "n_edges": n_edges,
        "alpha": alpha,
        "k_cutoff": k,
        "degree_bound_frequency": deg_freq,
        "branch_bound_frequency": branch_freq,
        "x2_ratio_frequency": ratio_freq,
        "x2_ratio_mean": float(ratio.mean()),
        "surplus_scaled_mean": float(surplus_scaled.mean()),
        "surplus_scaled_q95": float(np.quantile(surplus_scaled, 0.95)),
    }
    predictions = {"scale_1": scale_1}
    checks = [
        CheckResult("degree_bound_frequency", deg_freq, spec.tolerance("min_degree_bound_frequency"), ">="),
        CheckResult("branch_bound_frequency", branch_freq, spec.tolerance("min_branch_bound_frequency"), ">="),
        CheckResult("x2_ratio_frequency", ratio_freq, spec.tolerance("min_ratio_frequency"), ">="),
    ]
    if asymptotics.reciprocal_is_integer(alpha):
        mean = asymptotics.degree_count_scale(alpha, n_edges, k)
        tv = _tv_against_poisson(batch.degree_counts[k + 1], mean)
        stats["tv_boundary_poisson"] = tv
        predictions["poisson_mean"] = mean
        checks.append(CheckResult("tv_boundary_poisson", tv, spec.tolerance("tv_poisson"), "<="))
    return ExperimentReport(spec, stats, predictions, tuple(checks), time.perf_counter() - t0)


def run_gaussian_fluctuations(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    """Standardized degree counts against N(0,1) plus pairwise decorrelation."""
    t0 = time.perf_counter()
    ws = spec.weight_sequence()
    if ws.family != "factorial_alpha" or not 0 < ws.alpha < 1:
        raise ValueError("gaussian_fluctuations runs on factorial_alpha with alpha in (0, 1)")
    alpha = ws.alpha
    n_edges = max(spec.n_list)
    prediction = asymptotics.predict(alpha, n_edges)
    table = _build_table(spec, table)
    gen = RandomSource(spec.seed, spec.stream).generator()

    tracked = tuple(law.degree for law in prediction.laws)
    batch = collect_samples(table, n_edges, spec.samples, gen, track_degrees=tracked)
    _maybe_emit(batch, spec, emit_csv_dir)

    ks_by_degree: dict[str, float] = {}
    ks_simple_by_degree: dict[str, float] = {}
    standardized = []
    for law in prediction.laws:
        x = batch.degree_counts[law.degree]
        z = law.standardize(x)
        standardized.append(z)
        ks_by_degree[str(law.degree)] = _ks_to_standard_normal(z)
        if law.kind == "gaussian":
            i = law.degree - 1
            simple_center = asymptotics.degree_count_scale(alpha, n_edges, i)
            z_simple = (x - simple_center) / math.sqrt(simple_center)
            ks_simple_by_degree[str(law.degree)] = _ks_to_standard_normal(z_simple)

    max_corr = 0.0
    if len(standardized) > 1:
        c = np.corrcoef(np.vstack(standardized))
        off = c[~np.eye(len(standardized), dtype=bool)]
        max_corr = float(np.abs(off).max())

    stats = {
        "n_edges": n_edges,
        "alpha": alpha,
        "ks_by_degree": ks_by_degree,
        "ks_simple_center_by_degree": ks_simple_by_degree,
        "max_abs_corr": max_corr,
    }
    predictions = {
        "centers": list(prediction.centers),
        "scales": list(prediction.scales),
        "poisson_mean": prediction.poisson_mean,
    }
    checks = (
        CheckResult("ks_x2", ks_by_degree["2"], spec.tolerance("ks"), "<="),
        CheckResult("max_abs_corr", max_corr, spec.tolerance("max_abs_corr"), "<="),
    )
    return ExperimentReport(spec, stats, predictions, checks, time.perf_counter() - t0)


def run_logz_expansion(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    """Partition-function expansion residuals on a size grid (no sampling)."""
    t0 = time.perf_counter()
    ws = spec.weight_sequence()
    if ws.family != "factorial_alpha" or not 0 < ws.alpha < 1:
        raise ValueError("logz_expansion runs on factorial_alpha with alpha in (0, 1)")
    alpha = ws.alpha
    table = _build_table(spec, table)

    residuals = {}
    scaled = {}
    for n_edges in spec.n_list:
        e_n = table.log_z_n(n_edges) - asymptotics.predict_log_zn(
            asymptotics.REGIME_ALPHA_LT_1, alpha, n_edges
        )
        residuals[str(n_edges)] = e_n
        scaled[str(n_edges)] = abs(e_n) / n_edges ** (1.0 - 3.0 * alpha)
    n_last = max(spec.n_list)
    coarse = (table.log_z_n(n_last) - alpha * math.lgamma(n_last)) / n_last ** (1.0 - alpha)

    worst_scaled = max(scaled.values())
    checks = (
        CheckResult("expansion_residual_scaled", worst_scaled, spec.tolerance("residual_coeff"), "<="),
        CheckResult("coarse_ratio_lo", coarse, spec.tolerance("coarse_lo"), ">="),
        CheckResult("coarse_ratio_hi", coarse, spec.tolerance("coarse_hi"), "<="),
    )
    stats = {
        "alpha": alpha,
        "residuals": residuals,
        "residuals_scaled": scaled,
        "coarse_ratio": coarse,
    }
    return ExperimentReport(spec, stats, {}, checks, time.perf_counter() - t0)


def run_star_dominance(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    """alpha > 1: Z_N collapses onto the star weight and samples are stars."""
    t0 = time.perf_counter()
    ws = spec.weight_sequence()
    if ws.family != "factorial_alpha" or ws.alpha <= 1:
        raise ValueError("star_dominance runs on factorial_alpha with alpha > 1")
    alpha = ws.alpha
    table = _build_table(spec, table)
    gen = RandomSource(spec.seed, spec.stream).generator()
    n_edges = max(spec.n_list)

    log_pred = asymptotics.predict_log_zn(asymptotics.REGIME_ALPHA_GT_1, alpha, n_edges)
    zn_rel_error = abs(math.expm1(table.log_z_n(n_edges) - log_pred))
    batch = collect_samples(table, n_edges, spec.samples, gen)
    _maybe_emit(batch, spec, emit_csv_dir)
    star_freq = float(batch.is_star.mean())

    checks = (
        CheckResult("zn_rel_error", zn_rel_error, spec.tolerance("zn_rel_error"), "<="),
        CheckResult("star_frequency", star_freq, spec.tolerance("min_star_frequency"), ">="),
    )
    stats = {
        "n_edges": n_edges,
        "alpha": alpha,
        "zn_rel_error": zn_rel_error,
        "star_frequency": star_freq,
    }
    return ExperimentReport(spec, stats, {"log_zn": log_pred}, checks, time.perf_counter() - t0)


def run_identities(
    spec: ExperimentSpec,
    emit_csv_dir: Optional[str] = None,
    table: Optional[ZTable] = None,
) -> ExperimentReport:
    """Sweep the size-bias identity and the shift inequality over the table."""
    t0 = time.perf_counter()
    table = _build_table(spec, table)
    n_max = table.n_max

    worst = 0.0
    for n_vertices in range(1, n_max + 1):
        for n in range(0, n_max + 1):
            worst = max(worst, table.sum_identity_residual(n_vertices, n))

    exact_worst = None
    if spec.exact_upto > 0:
        exact_worst = 0
        for n_vertices in range(1, table.exact_upto + 1):
            for n in range(0, table.exact_upto + 1):
                exact_worst = max(
                    exact_worst, abs(table.sum_identity_exact_residual(n_vertices, n))
                )

    ineq_bound = min(50, n_max - 1)
    ineq_all_hold = True
    ineq_checked = 0
    for eps in spec.eps_list:
        for n_vertices in range(1, ineq_bound + 1):
            for n in range(0, ineq_bound + 1):
                res = table.shift_inequality(eps, n_vertices, n)
                if res.applicable:
                    ineq_checked += 1
                    ineq_all_hold &= bool(res.holds)

    checks = [
        CheckResult("worst_sum_residual", worst, spec.tolerance("max_sum_residual"), "<="),
        CheckResult("shift_inequality_violations", 0.0 if ineq_all_hold else 1.0, 0.0, "<="),
    ]
    if exact_worst is not None:
        checks.append(CheckResult("worst_exact_residual", float(exact_worst), 0.0, "<="))
    stats = {
        "n_max": n_max,
        "worst_sum_residual": worst,
        "exact_sum_residual_is_zero": None if exact_worst is None else exact_worst == 0,
        "shift_inequality_checked": ineq_checked,
        "shift_inequality_all_hold": ineq_all_hold,
        "eps_list": list(spec.eps_list),
    }
    return ExperimentReport(spec, stats, {}, tuple(checks), time.perf_counter() - t0)
