"""Dragoon: deterministic farthest-first seeding plus global one-move-per-center refinement.

Initialization places an orientation node at the middle of the scenario and
runs farthest-first traversal from it, so the start is a 2-approximate node
solution obtained without any random choice. Refinement then repeatedly visits
clusters worst-first and moves each center to the candidate site that gives
the best *global* objective (full reassignment of every vertex), comparing
``(max distance, mean distance)`` lexicographically. Only strict improvements
are accepted, which preserves the initial 2-approximation and guarantees
termination.

Node placement tries every vertex of the cluster as a site. Free placement
tries a square grid stencil of spacing ``eps`` around the center (clipped to
the cluster's bounding box grown by ``eps``) plus the cluster's own minimum
enclosing circle center, and halves ``eps`` whenever a full pass finds no
improving move.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import oracle
from .baselines import two_approx_from
from .core import (
    FREE,
    NODE,
    InvalidArgumentError,
    Point,
    PlacementConstraint,
    Scenario,
    Solution,
    as_coords,
    distances_to,
    make_solution,
    nearest,
    pairwise,
    validate_k,
)

# relative slack below which a change of the secondary criterion is treated as rounding noise
_TIE_RTOL = 1e-12


class TieCriterion(enum.Enum):
    MEAN = "mean"
    SUM = "sum"


class Orientation(enum.Enum):
    MEAN = "mean"  # coordinate average
    MEC = "mec"  # exact free 1-center (minimum enclosing circle)


@dataclass(frozen=True)
class DragoonParams:
    eps0: float | None = None  # None: bounding-box long side / 16
    eps_min: float = 1e-3
    tie_criterion: TieCriterion = TieCriterion.MEAN
    orientation: Orientation = Orientation.MEAN
    grid_radius: int = 2
    cluster_center_candidate: bool = True

    def __post_init__(self):
        if not self.eps_min > 0:
            raise InvalidArgumentError(f"eps_min must be > 0, got {self.eps_min}")
        if self.eps0 is not None and not self.eps0 > self.eps_min:
            raise InvalidArgumentError(f"eps0 must exceed eps_min, got eps0={self.eps0}, eps_min={self.eps_min}")
        if self.grid_radius < 1:
            raise InvalidArgumentError(f"grid_radius must be >= 1, got {self.grid_radius}")
        object.__setattr__(self, "tie_criterion", TieCriterion(self.tie_criterion))
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    def initial_spacing(self, scenario: Scenario) -> float:
        if self.eps0 is not None:
            return self.eps0
        x0, y0, x1, y1 = scenario.bbox()
        return max(x1 - x0, y1 - y0) / 16


def orientation_node(scenario: Scenario, method: Orientation = Orientation.MEAN) -> Point:
    if Orientation(method) is Orientation.MEC:
        return oracle.brute_force_free_1center(scenario.vertices)
    x, y = scenario.vertices.mean(axis=0)
    return Point(float(x), float(y))


def dragoon_init(scenario: Scenario, k: int, orientation: Orientation = Orientation.MEAN) -> np.ndarray:
    k = validate_k(scenario, k)
    return two_approx_from(scenario, k, orientation_node(scenario, orientation)).centers


class _State:
    """Center distance rows and the lexicographic global objective."""

    def __init__(self, scenario: Scenario, rows: np.ndarray, tie: TieCriterion, trace: list | None):
        self.n = scenario.n
        self.rows = rows
        self.tie = tie
        self.trace = trace
        if trace is not None:
            trace.append(self.value())

    def _secondary(self, sums):
        return sums / self.n if self.tie is TieCriterion.MEAN else sums

    def value(self) -> tuple[float, float]:
        cover = self.rows.min(axis=0)
        return float(cover.max()), float(self._secondary(cover.sum()))

    def labels(self):
        return nearest_rows(self.rows)

    def without(self, c: int) -> np.ndarray:
        if len(self.rows) == 1:
            return np.full(self.n, np.inf)
        return np.delete(self.rows, c, axis=0).min(axis=0)

    def best_move(self, c: int, cand_rows: np.ndarray):
        """Best candidate row for center ``c``; returns its index or None if nothing strictly improves."""
        rest = self.without(c)
        cur = np.minimum(self.rows[c], rest)
        cur_max, cur_sec = cur.max(), self._secondary(cur.sum())
        trial = np.minimum(cand_rows, rest[None, :])
        maxes = trial.max(axis=1)
        secs = self._secondary(trial.sum(axis=1))
        best = int(np.lexsort((np.arange(len(maxes)), secs, maxes))[0])
        better = maxes[best] < cur_max or (
            maxes[best] == cur_max and secs[best] < cur_sec - _TIE_RTOL * (1.0 + abs(cur_sec)))
        return best if better else None

    def move(self, c: int, row: np.ndarray):
        self.rows[c] = row
        if self.trace is not None:
            self.trace.append(self.value())


def nearest_rows(rows: np.ndarray):
    labels = np.argmin(rows, axis=0)
    return labels, rows[labels, np.arange(rows.shape[1])]


def _worst_first(labels: np.ndarray, dist: np.ndarray, k: int) -> np.ndarray:
    local = np.full(k, -np.inf)
    np.maximum.at(local, labels, dist)
    return np.lexsort((np.arange(k), -local))


def _frozen_mask(frozen, k: int) -> np.ndarray:
    if frozen is None:
        return np.zeros(k, dtype=bool)
    mask = np.asarray(frozen, dtype=bool)
    if mask.shape != (k,):
        raise InvalidArgumentError(f"frozen mask needs {k} entries, got {mask.shape}")
    return mask


def _vertex_indices(scenario: Scenario, centers: np.ndarray) -> np.ndarray:
    idx, d = nearest(centers, scenario.vertices)
    if np.any(d > 0):
        bad = int(np.flatnonzero(d > 0)[0])
        raise InvalidArgumentError(f"center {bad} at {tuple(centers[bad])} is not a vertex of the scenario")
    return idx


def dragoon_refine_node(scenario: Scenario, centers, params: DragoonParams = DragoonParams(),
                        frozen: Sequence[bool] | None = None, trace: list | None = None,
                        dist: np.ndarray | None = None) -> Solution:
    """Refine vertex centers; each cluster's center may move to any vertex of its cluster once per pass."""
    centers = as_coords(centers)
    idx = _vertex_indices(scenario, centers)
    k = len(idx)
    fixed = _frozen_mask(frozen, k)
    if dist is None:
        dist = pairwise(scenario)
    state = _State(scenario, dist[idx].copy(), params.tie_criterion, trace)
    while True:
        labels, d = state.labels()
        moved = False
        for c in _worst_first(labels, d, k):
            if fixed[c]:
                continue
            members = np.flatnonzero(labels == c)
            if len(members) == 0:
                continue
            best = state.best_move(c, dist[members])
            if best is not None:
                idx[c] = members[best]
                state.move(c, dist[idx[c]])
                moved = True
        if not moved:
            break
    return make_solution(scenario, scenario.vertices[idx], NODE)


def _grid(center: np.ndarray, eps: float, radius: int, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    steps = np.arange(-radius, radius + 1) * eps
    gx, gy = np.meshgrid(center[0] + steps, center[1] + steps, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    keep = np.all((pts >= lo - eps) & (pts <= hi + eps), axis=1)
    return pts[keep]


def dragoon_refine_free(scenario: Scenario, centers, params: DragoonParams = DragoonParams(),
                        frozen: Sequence[bool] | None = None, trace: list | None = None) -> Solution:
    """Refine centers anywhere in the plane on a grid whose spacing halves on stagnation."""
    verts = scenario.vertices
    centers = np.array(as_coords(centers), dtype=float)
    k = len(centers)
    if k == 0:
        raise InvalidArgumentError("at least one center is required")
    fixed = _frozen_mask(frozen, k)
    state = _State(scenario, distances_to(verts, centers), params.tie_criterion, trace)
    eps = params.initial_spacing(scenario)
    mec_cache: dict[bytes, np.ndarray] = {}

    while eps > 0:
        labels, d = state.labels()
        moved = False
        for c in _worst_first(labels, d, k):
            if fixed[c]:
                continue
            members = np.flatnonzero(labels == c)
            if len(members) == 0:
                continue
            pts = verts[members]
            cands = _grid(centers[c], eps, params.grid_radius, pts.min(axis=0), pts.max(axis=0))
            if params.cluster_center_candidate:
                key = members.tobytes()
                if key not in mec_cache:
                    mec_cache[key] = np.array(tuple(oracle.brute_force_free_1center(pts)))
                cands = np.vstack([cands, mec_cache[key]])
            if len(cands) == 0:
                continue
            cand_rows = distances_to(verts, cands)
            best = state.best_move(c, cand_rows)
            if best is not None:
                centers[c] = cands[best]
                state.move(c, cand_rows[best])
                moved = True
        if not moved:
            if eps < params.eps_min:
                break
            eps /= 2
    return make_solution(scenario, centers, FREE)


def dragoon(scenario: Scenario, k: int, constraint: PlacementConstraint = NODE,
            params: DragoonParams = DragoonParams(), trace: list | None = None) -> Solution:
    """Full Dragoon run; deterministic for given inputs.

    Under free placement the node refinement runs first and the grid refinement
    continues from its result, so the free answer is never worse than the node one.
    """
    constraint = PlacementConstraint.parse(constraint)
    init = dragoon_init(scenario, k, params.orientation)
    node = dragoon_refine_node(scenario, init, params, trace=trace)
    if constraint.is_node:
        return node
    if constraint.eps0 is not None or constraint.eps_min is not None:
        params = DragoonParams(
            eps0=constraint.eps0 if constraint.eps0 is not None else params.eps0,
            eps_min=constraint.eps_min if constraint.eps_min is not None else params.eps_min,
            tie_criterion=params.tie_criterion,
            orientation=params.orientation,
            grid_radius=params.grid_radius,
            cluster_center_candidate=params.cluster_center_candidate,
        )
    if trace is not None:
        trace.pop()  # the free stage re-records the node result as its starting value
    return dragoon_refine_free(scenario, node.centers, params, trace=trace)
