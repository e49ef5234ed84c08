"""Node-placement baselines: Monte Carlo sampling and farthest-first traversal.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
given seed reproduces the same run on any platform.
"""

from __future__ import annotations

import numpy as np

from .core import NODE, InvalidArgumentError, Scenario, Solution, as_coords, make_solution, validate_k


def monte_carlo(scenario: Scenario, k: int, seed: int = 0, trials: int = 3) -> Solution:
    """Best of ``trials`` uniformly random k-subsets of the vertices (max objective)."""
    k = validate_k(scenario, k)
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    verts = scenario.vertices
    best_val, best_idx = np.inf, None
    for _ in range(trials):
        idx = rng.choice(scenario.n, size=k, replace=False)
        diff = verts[idx][:, None, :] - verts[None, :, :]
        val = np.hypot(diff[..., 0], diff[..., 1]).min(axis=0).max()
        if val < best_val:
            best_val, best_idx = val, idx
    return make_solution(scenario, verts[best_idx], NODE)


def farthest_first(scenario: Scenario, k: int, first: int) -> np.ndarray:
    """Vertex indices chosen by farthest-first traversal starting at vertex ``first``.

    Ties on the farthest distance go to the lowest vertex index (``argmax``).
    """
    verts = scenario.vertices
    chosen = [int(first)]
    d = np.hypot(*(verts - verts[first]).T)
    for _ in range(1, k):
        nxt = int(np.argmax(d))
        chosen.append(nxt)
        np.minimum(d, np.hypot(*(verts - verts[nxt]).T), out=d)
    return np.array(chosen, dtype=np.intp)


def two_approx(scenario: Scenario, k: int, seed: int = 0, first: int | None = None) -> Solution:
    """Gonzalez's 2-approximation with a uniformly random first vertex.

    ``first`` pins the starting vertex instead of drawing it from ``seed``.
    """
    k = validate_k(scenario, k)
    if first is None:
        first = int(np.random.default_rng(seed).integers(scenario.n))
    elif not 0 <= first < scenario.n:
        raise InvalidArgumentError(f"first vertex index {first} out of range")
    return make_solution(scenario, scenario.vertices[farthest_first(scenario, k, first)], NODE)


def two_approx_from(scenario: Scenario, k: int, start) -> Solution:
    """Deterministic farthest-first seeded by an arbitrary point ``start``.

    The first center is the vertex farthest from ``start``; traversal continues
    as in :func:`two_approx`.
    """
    k = validate_k(scenario, k)
    start = as_coords([tuple(start)])[0]
    first = int(np.argmax(np.hypot(*(scenario.vertices - start).T)))
    return make_solution(scenario, scenario.vertices[farthest_first(scenario, k, first)], NODE)

