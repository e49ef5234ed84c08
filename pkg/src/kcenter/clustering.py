"""k-Means style placement (MacQueen, Lloyd and k-Means++ seeding)."""

from __future__ import annotations

import enum

import numpy as np

from .core import (
    NODE,
    InvalidArgumentError,
    PlacementConstraint,
    Scenario,
    Solution,
    as_coords,
    make_solution,
    max_objective,
    nearest,
    validate_k,
)

TOL = 1e-9
MAX_ITER = 1000
DEFAULT_RESTARTS = 10


class KMeansInit(enum.Enum):
    MACQUEEN = "macqueen"
    LLOYD = "lloyd"
    KMEANSPP = "kmeanspp"

    @classmethod
    def parse(cls, value) -> "KMeansInit":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower().replace("+", "p").replace("-", ""))
        except ValueError:
            raise InvalidArgumentError(f"unknown k-means initialization {value!r}") from None


class Mapping(enum.Enum):
    EVERY_STEP = "every"
    AT_END = "end"


def kmeans_init(scenario: Scenario, k: int, method=KMeansInit.MACQUEEN, seed: int = 0) -> np.ndarray:
    method = KMeansInit.parse(method)
    rng = np.random.default_rng(seed)
    verts = scenario.vertices
    if method is KMeansInit.LLOYD:
        if k < 1:
            raise InvalidArgumentError(f"k must be >= 1, got {k}")
        x0, y0, x1, y1 = scenario.bbox()
        return np.column_stack([rng.uniform(x0, x1, k), rng.uniform(y0, y1, k)])
    k = validate_k(scenario, k)
    if method is KMeansInit.MACQUEEN:
        return verts[rng.choice(scenario.n, size=k, replace=False)].copy()

    chosen = [int(rng.integers(scenario.n))]
    d2 = np.sum((verts - verts[chosen[0]]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            # every vertex already coincides with a center
            rest = np.setdiff1d(np.arange(scenario.n), chosen)
            nxt = int(rng.choice(rest))
        else:
            nxt = int(rng.choice(scenario.n, p=d2 / total))
        chosen.append(nxt)
        np.minimum(d2, np.sum((verts - verts[nxt]) ** 2, axis=1), out=d2)
    return verts[chosen].copy()


def _snap(scenario: Scenario, centers: np.ndarray) -> np.ndarray:
    idx, _ = nearest(centers, scenario.vertices)
    return scenario.vertices[idx].copy()


def kmeans_run(scenario: Scenario, init, constraint: PlacementConstraint = NODE,
               mapping: Mapping = Mapping.EVERY_STEP, max_iter: int = MAX_ITER,
               history: list | None = None) -> Solution:
    """Lloyd iteration from ``init``.

    Under node placement the centroids are snapped to their nearest vertex, either
    after every update (``Mapping.EVERY_STEP``) or once at the end. If ``history``
    is given, the sum of squared distances after each assignment step is appended.
    """
    centers = np.array(as_coords(init), dtype=float)
    if len(centers) == 0:
        raise InvalidArgumentError("kmeans_run needs at least one initial center")
    constraint = PlacementConstraint.parse(constraint)
    verts = scenario.vertices
    snap_each = constraint.is_node and mapping is Mapping.EVERY_STEP
    if snap_each:
        centers = _snap(scenario, centers)
    k = len(centers)

    for _ in range(max_iter):
        labels, dist = nearest(verts, centers)
        if history is not None:
            history.append(float(np.sum(dist ** 2)))
        new = np.empty_like(centers)
        counts = np.bincount(labels, minlength=k)
        for axis in (0, 1):
            sums = np.bincount(labels, weights=verts[:, axis], minlength=k)
            new[:, axis] = np.divide(sums, counts, out=centers[:, axis].copy(), where=counts > 0)
        for c in np.flatnonzero(counts == 0):
            # re-seed an empty cluster at the worst-served vertex
            far = int(np.argmax(dist))
            new[c] = verts[far]
            dist[far] = 0.0
        if snap_each:
            new = _snap(scenario, new)
        shift = np.max(np.hypot(*(new - centers).T))
        centers = new
        if shift <= TOL:
            break

    if constraint.is_node and not snap_each:
        centers = _snap(scenario, centers)
    return make_solution(scenario, centers, constraint)


def kmeans(scenario: Scenario, k: int, method=KMeansInit.MACQUEEN, constraint: PlacementConstraint = NODE,
           restarts: int = DEFAULT_RESTARTS, seed: int = 0, mapping: Mapping = Mapping.EVERY_STEP) -> Solution:
    """Best (max objective) of ``restarts`` independent init + Lloyd runs."""
    if restarts < 1:
        raise InvalidArgumentError(f"restarts must be >= 1, got {restarts}")
    best, best_val = None, np.inf
    for child in np.random.SeedSequence(seed).spawn(restarts):
        init = kmeans_init(scenario, k, method, child)
        sol = kmeans_run(scenario, init, constraint, mapping)
        val = max_objective(scenario, sol.centers)
        if val < best_val:
            best, best_val = sol, val
    return best
