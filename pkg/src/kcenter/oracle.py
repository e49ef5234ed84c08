"""Exact solvers for small instances.

These are ground truth for the test-suite: exhaustive enumeration of node
placements, and the minimum enclosing circle for the free 1-center.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import (
    NODE,
    BudgetExceededError,
    InvalidArgumentError,
    Point,
    Scenario,
    Solution,
    as_coords,
    make_solution,
    pairwise,
    validate_k,
)

DEFAULT_BUDGET = 10**7
_CHUNK_ELEMENTS = 4_000_000


def brute_force_node(scenario: Scenario, k: int, budget: int = DEFAULT_BUDGET) -> Solution:
    """Enumerate every k-subset of vertices and return one minimizing the max distance.

    Subsets are visited in lexicographic order and only a strictly smaller
    objective replaces the incumbent, so ties resolve to the smallest index tuple.
    """
    k = validate_k(scenario, k)
    n = scenario.n
    total = math.comb(n, k)
    if total > budget:
        raise BudgetExceededError(
            f"brute force needs C({n},{k}) = {total} combinations, budget is {budget}")
    dist = pairwise(scenario)
    chunk = max(1, _CHUNK_ELEMENTS // (k * n))
    combos = itertools.combinations(range(n), k)
    best_val = math.inf
    best_combo = None
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, chunk)), dtype=np.intp)
        if block.size == 0:
            break
        block = block.reshape(-1, k)
        vals = dist[block].min(axis=1).max(axis=1)
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val = float(vals[i])
            best_combo = block[i]
    return make_solution(scenario, scenario.vertices[best_combo], NODE)


# -- minimum enclosing circle ------------------------------------------------

_REL_EPS = 1e-12


def _circle_two(a, b):
    cx, cy = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
    return cx, cy, max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1]))


def _circumcircle(a, b, c):
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    x = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    y = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    r = max(math.hypot(x - p[0], y - p[1]) for p in (a, b, c))
    return x, y, r


def _inside(circle, p) -> bool:
    return circle is not None and math.hypot(p[0] - circle[0], p[1] - circle[1]) <= circle[2] * (1 + _REL_EPS) + _REL_EPS


def _cross(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _circle_with_two(pts, p, q):
    # p and q lie on the boundary; keep the smallest circumcircle on each side of pq
    circ = _circle_two(p, q)
    left = right = None
    for r in pts:
        if _inside(circ, r):
            continue
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        side = _cross(p, q, r)
        if side > 0 and (left is None or _cross(p, q, c) > _cross(p, q, left)):
            left = c
        elif side < 0 and (right is None or _cross(p, q, c) < _cross(p, q, right)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_with_one(pts, p):
    circ = (p[0], p[1], 0.0)
    for i, q in enumerate(pts):
        if not _inside(circ, q):
            circ = _circle_two(p, q) if circ[2] == 0 else _circle_with_two(pts[:i], p, q)
    return circ


def min_enclosing_circle(points) -> tuple[Point, float]:
    """Smallest disk containing all points, as (center, radius).

    Randomized incremental construction over a fixed shuffle (seed 0), so the
    result is deterministic for a given input order.
    """
    coords = as_coords(points)
    if len(coords) == 0:
        raise InvalidArgumentError("min_enclosing_circle needs at least one point")
    pts = [(float(x), float(y)) for x, y in coords]
    order = np.random.default_rng(0).permutation(len(pts))
    pts = [pts[i] for i in order]
    circ = None
    for i, p in enumerate(pts):
        if circ is None or not _inside(circ, p):
            circ = _circle_with_one(pts[:i], p)
    cx, cy, _ = circ
    radius = float(np.hypot(coords[:, 0] - cx, coords[:, 1] - cy).max())
    return Point(cx, cy), radius


def brute_force_free_1center(points) -> Point:
    return min_enclosing_circle(points)[0]
