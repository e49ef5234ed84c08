"""Scenario generation and the experiment protocol: k-sweeps, algorithm comparison,
free-vs-node deviation, saturation and the cost trade-off."""

from __future__ import annotations

import csv
import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .algorithms import Algorithm
from .core import (
    DegenerateScenarioError,
    InvalidArgumentError,
    ObjectiveReport,
    PlacementConstraint,
    Scenario,
    evaluate,
    normalize,
)
from .dragoon import DragoonParams, dragoon

AREA = 100.0


def generate_uniform(n: int, seed: int) -> Scenario:
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return Scenario(rng.uniform(0.0, AREA, size=(n, 2)), f"uniform-n{n}-s{seed}")


def generate_clustered(n: int, blobs: int, spread: float, seed: int) -> Scenario:
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    if blobs < 1:
        raise InvalidArgumentError(f"blobs must be >= 1, got {blobs}")
    if spread < 0:
        raise InvalidArgumentError(f"spread must be >= 0, got {spread}")
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.0, AREA, size=(blobs, 2))
    which = rng.integers(blobs, size=n)
    pts = centers[which] + rng.normal(0.0, 1.0, size=(n, 2)) * spread
    return Scenario(np.clip(pts, 0.0, AREA), f"clustered-n{n}-b{blobs}-s{seed}")


def benchmark_scenarios(count: int = 10, seed: int = 2024, n_range=(600, 1200)) -> list[Scenario]:
    """Alternating uniform and clustered scenarios with sizes drawn from ``n_range``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        sub = int(rng.integers(2**31))
        if i % 2 == 0:
            out.append(generate_uniform(n, sub))
        else:
            out.append(generate_clustered(n, int(rng.integers(4, 13)), float(rng.uniform(5.0, 12.0)), sub))
    return out


def prepare(scenario: Scenario) -> Scenario:
    """Normalize unless already normalized; single-location scenarios pass through."""
    if scenario.normalized:
        return scenario
    try:
        return normalize(scenario)
    except DegenerateScenarioError:
        return scenario


def scenario_seed(base: int, index: int) -> int:
    return int(np.random.SeedSequence([base, index]).generate_state(1)[0])


def _run_job(job):
    algorithm, scenario, k = job
    return evaluate(scenario, algorithm.run(scenario, k))


def run_jobs(jobs: list, n_jobs: int = 1) -> list[ObjectiveReport]:
    """Evaluate ``(algorithm, scenario, k)`` jobs; results keep input order."""
    if n_jobs <= 1 or len(jobs) <= 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(_run_job, jobs, chunksize=1))


# -- k sweeps -----------------------------------------------------------------

class Basis(enum.Enum):
    MAX = "max"
    SUM = "sum"


@dataclass(frozen=True)
class SweepRow:
    k: int
    report: ObjectiveReport
    improvement_pct: float | None

    def as_dict(self) -> dict:
        return {"k": self.k, **self.report.as_row(), "improvement_pct": self.improvement_pct}


SWEEP_HEADER = ["k", "max", "q95", "median", "mean", "improvement_pct"]


def _check_ks(k_values: Sequence[int], n: int | None = None) -> list[int]:
    ks = [int(k) for k in k_values]
    if not ks:
        raise InvalidArgumentError("k_values must not be empty")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise InvalidArgumentError(f"k_values must be strictly increasing, got {ks}")
    if ks[0] < 1 or (n is not None and ks[-1] > n):
        raise InvalidArgumentError(f"k_values must lie in [1, {n}], got {ks}")
    return ks


def improvement(prev: float, cur: float) -> float:
    return 0.0 if prev == 0 else 100.0 * (prev - cur) / prev


def rows_from_reports(ks: Sequence[int], reports: Sequence[ObjectiveReport], basis: Basis = Basis.MAX) -> list[SweepRow]:
    rows = []
    for i, (k, rep) in enumerate(zip(ks, reports)):
        imp = None
        if i > 0:
            prev = getattr(reports[i - 1], basis.value)
            imp = improvement(prev, getattr(rep, basis.value))
        rows.append(SweepRow(k, rep, imp))
    return rows


def sweep_k(scenario: Scenario, algorithm: Algorithm, k_values: Sequence[int], n_jobs: int = 1,
            basis: Basis = Basis.MAX) -> list[SweepRow]:
    scenario = prepare(scenario)
    ks = _check_ks(k_values, scenario.n)
    reports = run_jobs([(algorithm, scenario, k) for k in ks], n_jobs)
    return rows_from_reports(ks, reports, basis)


def saturation_point(rows: Sequence[SweepRow], threshold_pct: float = 1.0) -> tuple[int, bool]:
    """Smallest k after which every later row improves by less than ``threshold_pct`` per added center.

    Improvements are divided by the k step between consecutive rows, so a
    contiguous sweep uses them as-is. Returns ``(k, found)``; when even the
    last step is above the threshold the last k is returned with ``found=False``.
    """
    if not rows:
        raise InvalidArgumentError("saturation_point needs at least one row")
    last_big = 0
    for i in range(1, len(rows)):
        step = rows[i].k - rows[i - 1].k
        if rows[i].improvement_pct / step >= threshold_pct:
            last_big = i
    if len(rows) > 1 and last_big == len(rows) - 1:
        return rows[-1].k, False
    return rows[last_big].k, True


def write_sweep(rows: Iterable[SweepRow], path: str | Path) -> None:
    _write_csv(path, SWEEP_HEADER, [[r.k, r.report.max, r.report.q95, r.report.median, r.report.mean,
                                     "" if r.improvement_pct is None else r.improvement_pct] for r in rows])


# -- algorithm comparison -------------------------------------------------------

COMPARE_HEADER = ["algorithm", "k", "mean_max", "mean_q95", "mean_median", "mean_mean", "scenarios"]


@dataclass(frozen=True)
class CompareRow:
    algorithm: str
    k: int
    mean_max: float
    mean_q95: float
    mean_median: float
    mean_mean: float
    scenarios: int


def compare_algorithms(scenarios: Sequence[Scenario], algorithms: Sequence[Algorithm], k_values: Sequence[int],
                       n_jobs: int = 1) -> list[CompareRow]:
    """Mean statistics per (algorithm, k) across normalized scenarios.

    Each scenario gets its own seed derived from the algorithm's seed and the
    scenario position, so results do not depend on scheduling.
    """
    if not scenarios or not algorithms:
        raise InvalidArgumentError("compare_algorithms needs scenarios and algorithms")
    prepared = [prepare(s) for s in scenarios]
    ks = _check_ks(k_values, min(s.n for s in prepared))
    jobs = [(a.with_seed(scenario_seed(a.seed, i)), s, k)
            for a in algorithms for k in ks for i, s in enumerate(prepared)]
    reports = run_jobs(jobs, n_jobs)
    rows, m = [], len(prepared)
    for j, (a, k) in enumerate((a, k) for a in algorithms for k in ks):
        chunk = reports[j * m:(j + 1) * m]
        rows.append(CompareRow(a.label, k, *(float(np.mean([getattr(r, f) for r in chunk]))
                                             for f in ("max", "q95", "median", "mean")), m))
    return rows


def write_compare(rows: Iterable[CompareRow], path: str | Path) -> None:
    _write_csv(path, COMPARE_HEADER, [[r.algorithm, r.k, r.mean_max, r.mean_q95, r.mean_median, r.mean_mean,
                                       r.scenarios] for r in rows])


# -- free vs node -------------------------------------------------------------------

DEVIATION_HEADER = ["k", "mean_max_deviation_pct", "worst_max_deviation_pct", "mean_avg_deviation_pct",
                    "worst_avg_deviation_pct", "mean_compensation", "worst_compensation"]


@dataclass(frozen=True)
class DeviationRow:
    k: int
    mean_max_deviation_pct: float
    worst_max_deviation_pct: float
    mean_avg_deviation_pct: float
    worst_avg_deviation_pct: float
    mean_compensation: float
    worst_compensation: int


def deviation_pct(node: float, free: float) -> float:
    """Relative excess of node over free placement, in percent; 0/0 counts as 0."""
    if free == 0:
        return 0.0 if node == 0 else math.inf
    return 100.0 * (node - free) / free


def _free_vs_node_one(job):
    scenario, ks, params = job
    cache: dict[int, ObjectiveReport] = {}

    def node(k):
        if k not in cache:
            cache[k] = evaluate(scenario, dragoon(scenario, k, PlacementConstraint.node(), params))
        return cache[k]

    out = []
    for k in ks:
        free = evaluate(scenario, dragoon(scenario, k, PlacementConstraint.free(), params))
        extra = None
        for k2 in range(k, scenario.n + 1):
            if node(k2).max <= free.max:
                extra = k2 - k
                break
        out.append((deviation_pct(node(k).max, free.max), deviation_pct(node(k).mean, free.mean),
                    scenario.n - k if extra is None else extra))
    return out


def free_vs_node(scenarios: Sequence[Scenario], k_values: Sequence[int], params: DragoonParams = DragoonParams(),
                 n_jobs: int = 1) -> list[DeviationRow]:
    """Dragoon node vs free placement per k, aggregated over scenarios.

    Compensation is the number of extra node-placed centers needed to match the
    free-placement max distance at k.
    """
    if not scenarios:
        raise InvalidArgumentError("free_vs_node needs at least one scenario")
    prepared = [prepare(s) for s in scenarios]
    ks = _check_ks(k_values, min(s.n for s in prepared))
    jobs = [(s, ks, params) for s in prepared]
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            per_scenario = list(pool.map(_free_vs_node_one, jobs))
    else:
        per_scenario = [_free_vs_node_one(j) for j in jobs]
    rows = []
    for i, k in enumerate(ks):
        dev = [r[i][0] for r in per_scenario]
        avg = [r[i][1] for r in per_scenario]
        comp = [r[i][2] for r in per_scenario]
        rows.append(DeviationRow(k, float(np.mean(dev)), float(np.max(dev)), float(np.mean(avg)),
                                 float(np.max(avg)), float(np.mean(comp)), int(np.max(comp))))
    return rows


def write_deviation(rows: Iterable[DeviationRow], path: str | Path) -> None:
    _write_csv(path, DEVIATION_HEADER, [[r.k, r.mean_max_deviation_pct, r.worst_max_deviation_pct,
                                         r.mean_avg_deviation_pct, r.worst_avg_deviation_pct,
                                         r.mean_compensation, r.worst_compensation] for r in rows])


# -- cost trade-off -------------------------------------------------------------------

COST_HEADER = ["k", "transport", "operating", "total"]


@dataclass(frozen=True)
class CostModel:
    setup_per_center: float = 0.0
    operating_per_center: float = 0.0
    transport_per_distance: float = 0.0
    objective_basis: Basis = Basis.SUM

    def __post_init__(self):
        object.__setattr__(self, "objective_basis", Basis(self.objective_basis))
        for name in ("setup_per_center", "operating_per_center", "transport_per_distance"):
            if getattr(self, name) < 0:
                raise InvalidArgumentError(f"{name} must be >= 0")


@dataclass(frozen=True)
class CostRow:
    k: int
    transport: float
    operating: float
    total: float


def cost_curve(ks: Sequence[int], reports: Sequence[ObjectiveReport], model: CostModel) -> list[CostRow]:
    rows = []
    for k, rep in zip(ks, reports):
        transport = model.transport_per_distance * getattr(rep, model.objective_basis.value)
        operating = k * (model.setup_per_center + model.operating_per_center)
        rows.append(CostRow(k, transport, operating, transport + operating))
    return rows


def argmin_cost(rows: Sequence[CostRow]) -> int:
    best = rows[0]
    for row in rows[1:]:
        if row.total < best.total:
            best = row
    return best.k


def cost_optimum(scenario: Scenario, algorithm: Algorithm, model: CostModel, k_values: Sequence[int],
                 n_jobs: int = 1) -> tuple[int, list[CostRow]]:
    """Center count minimizing operating plus transport cost, and the full cost curve."""
    scenario = prepare(scenario)
    ks = _check_ks(k_values, scenario.n)
    rows = cost_curve(ks, run_jobs([(algorithm, scenario, k) for k in ks], n_jobs), model)
    return argmin_cost(rows), rows


def write_cost(rows: Iterable[CostRow], path: str | Path) -> None:
    _write_csv(path, COST_HEADER, [[r.k, r.transport, r.operating, r.total] for r in rows])


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return value


def _write_csv(path: str | Path, header: list[str], rows) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
