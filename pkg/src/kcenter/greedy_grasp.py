"""Greedy placement with backtracking, and GRASP, for node placement.

Both work on the full vertex distance matrix. Candidate scans under the max
objective are pruned exactly: a site can only lower the current maximum if it
lies closer than that maximum to the worst-served vertex, so every other
candidate is known to leave the objective unchanged without evaluating it.
"""

from __future__ import annotations

import numpy as np

from .core import NODE, InvalidArgumentError, Scenario, Solution, make_solution, pairwise, validate_k

DEFAULT_RCL_ALPHA = 0.15
DEFAULT_ITERATIONS = 32


def _check_objective(objective: str) -> str:
    if objective not in ("max", "sum"):
        raise InvalidArgumentError(f"objective must be 'max' or 'sum', got {objective!r}")
    return objective


def _coverage(dist: np.ndarray, centers) -> np.ndarray:
    if len(centers) == 0:
        return np.full(dist.shape[0], np.inf)
    return dist[list(centers)].min(axis=0)


def _value(cover: np.ndarray, objective: str) -> float:
    return float(cover.max() if objective == "max" else cover.sum())


def _scan(dist: np.ndarray, cover: np.ndarray, objective: str, prune: bool = True):
    """Objective of ``min(cover, dist[v])`` for every vertex v, as (max, sum) arrays.

    Under the max objective only candidates that can beat the current max are
    evaluated in full; the rest get the unchanged max and an infinite sum.
    """
    n = dist.shape[0]
    cur = cover.max()
    if objective == "sum" or not prune or not np.isfinite(cur):
        trial = np.minimum(dist, cover[None, :])
        return trial.max(axis=1), trial.sum(axis=1)
    worst = int(np.argmax(cover))
    vals = np.full(n, cur)
    sums = np.full(n, np.inf)
    cand = np.flatnonzero(dist[:, worst] < cur)
    if len(cand):
        trial = np.minimum(dist[cand], cover[None, :])
        vals[cand] = trial.max(axis=1)
        sums[cand] = trial.sum(axis=1)
    return vals, sums


def _best_addition(dist, cover, objective):
    vals, sums = _scan(dist, cover, objective)
    if objective == "sum":
        return int(np.argmin(sums)), float(sums.min())
    if vals.min() >= cover.max():
        # nobody lowers the max: the decision falls to the sums, which pruning skipped
        vals, sums = _scan(dist, cover, objective, prune=False)
    # lexicographic (max, sum), lowest index last
    order = np.lexsort((np.arange(len(vals)), sums, vals))
    best = int(order[0])
    return best, float(vals[best])


def _best_relocation(dist, centers, pos, objective):
    others = centers[:pos] + centers[pos + 1:]
    cover = _coverage(dist, others)
    vals, sums = _scan(dist, cover, objective)
    score = vals if objective == "max" else sums
    best = int(np.argmin(score))
    return best, float(score[best])


def greedy(scenario: Scenario, k: int, backtrack: bool = True, objective: str = "max") -> Solution:
    """Add the most beneficial vertex until ``k`` centers are placed.

    Benefit is the reduction of the chosen objective; under ``max`` ties are
    broken by the resulting distance sum, then by lowest vertex index. With
    ``backtrack`` each placed center is revisited after every addition and
    moved to its best site when that strictly improves the objective.
    """
    k = validate_k(scenario, k)
    objective = _check_objective(objective)
    dist = pairwise(scenario)
    centers: list[int] = []
    while len(centers) < k:
        v, _ = _best_addition(dist, _coverage(dist, centers), objective)
        centers.append(v)
        if backtrack and len(centers) > 1:
            _backtrack(dist, centers, objective)
    return make_solution(scenario, scenario.vertices[centers], NODE)


def _backtrack(dist, centers: list[int], objective: str) -> None:
    current = _value(_coverage(dist, centers), objective)
    changed = True
    while changed:
        changed = False
        for pos in range(len(centers)):
            v, val = _best_relocation(dist, centers, pos, objective)
            if val < current:
                centers[pos] = v
                current = val
                changed = True


def _construct(dist, k, rng, alpha):
    centers: list[int] = []
    cover = np.full(dist.shape[0], np.inf)
    for _ in range(k):
        vals, _ = _scan(dist, cover, "max")
        cur = cover.max()
        benefit = (cur - vals) if np.isfinite(cur) else -vals
        hi = benefit.max()
        if np.isfinite(cur) and hi <= 0:
            # no vertex lowers the max; rank by the distance sum instead
            _, sums = _scan(dist, cover, "max", prune=False)
            benefit = -sums
            hi = benefit.max()
        lo = benefit.min()
        rcl = np.flatnonzero(benefit >= hi - alpha * (hi - lo))
        v = int(rcl[rng.integers(len(rcl))])
        centers.append(v)
        np.minimum(cover, dist[v], out=cover)
    return centers


def local_search(dist: np.ndarray, centers: list[int], rng: np.random.Generator,
                 trace: list | None = None) -> list[int]:
    """Relocate randomly chosen centers to their best vertex while the max strictly drops."""
    centers = list(centers)
    current = _value(_coverage(dist, centers), "max")
    if trace is not None:
        trace.append(current)
    improved = True
    while improved:
        improved = False
        for pos in rng.permutation(len(centers)):
            v, val = _best_relocation(dist, centers, int(pos), "max")
            if val < current:
                centers[int(pos)] = v
                current = val
                improved = True
                if trace is not None:
                    trace.append(current)
    return centers


def grasp(scenario: Scenario, k: int, seed: int = 0, iterations: int = DEFAULT_ITERATIONS,
          rcl_alpha: float = DEFAULT_RCL_ALPHA) -> Solution:
    """Greedy randomized construction plus local search; best over ``iterations``.

    The restricted candidate list holds every vertex whose max-objective benefit
    is within ``rcl_alpha`` of the best benefit, measured on the band between the
    worst and best candidate.
    """
    k = validate_k(scenario, k)
    if not 0.0 <= rcl_alpha <= 1.0:
        raise InvalidArgumentError(f"rcl_alpha must lie in [0, 1], got {rcl_alpha}")
    if iterations < 1:
        raise InvalidArgumentError(f"iterations must be >= 1, got {iterations}")
    dist = pairwise(scenario)
    rng = np.random.default_rng(seed)
    best, best_val = None, np.inf
    for _ in range(iterations):
        centers = local_search(dist, _construct(dist, k, rng, rcl_alpha), rng)
        val = _value(_coverage(dist, centers), "max")
        if val < best_val:
            best, best_val = centers, val
    return make_solution(scenario, scenario.vertices[best], NODE)
