"""Genetic algorithm and simulated annealing baselines.

Operator choices (tournament of two, one-point crossover, single-gene
mutation, geometric cooling) are plain textbook defaults; nothing here is
tuned for the k-center problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    InvalidArgumentError,
    PlacementConstraint,
    Scenario,
    Solution,
    distances_to,
    make_solution,
    validate_k,
)


@dataclass(frozen=True)
class GAParams:
    population: int = 25
    generations: int = 80
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    elitism: int = 1

    def __post_init__(self):
        if self.population < 2:
            raise InvalidArgumentError(f"population must be >= 2, got {self.population}")
        if not 0 <= self.elitism < self.population:
            raise InvalidArgumentError(f"elitism must be in [0, population), got {self.elitism}")
        if self.generations < 0:
            raise InvalidArgumentError(f"generations must be >= 0, got {self.generations}")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidArgumentError(f"{name} must lie in [0, 1]")


class _Space:
    """Feasible center locations: vertex indices (node) or coordinates (free)."""

    def __init__(self, scenario: Scenario, k: int, constraint: PlacementConstraint, rng):
        self.scenario = scenario
        self.node = constraint.is_node
        self.k = validate_k(scenario, k) if self.node else k
        if k < 1:
            raise InvalidArgumentError(f"k must be >= 1, got {k}")
        self.rng = rng
        x0, y0, x1, y1 = scenario.bbox()
        self.lo = np.array([x0, y0])
        self.hi = np.array([x1, y1])

    def random_genome(self) -> np.ndarray:
        if self.node:
            return self.rng.choice(self.scenario.n, size=self.k, replace=False)
        return self.rng.uniform(self.lo, self.hi, size=(self.k, 2))

    def random_gene(self):
        if self.node:
            return self.rng.integers(self.scenario.n)
        return self.rng.uniform(self.lo, self.hi)

    def coords(self, genome) -> np.ndarray:
        return self.scenario.vertices[genome] if self.node else genome

    def objective(self, genome) -> float:
        return float(distances_to(self.scenario.vertices, self.coords(genome)).min(axis=0).max())


def ga(scenario: Scenario, k: int, constraint: PlacementConstraint, params: GAParams = GAParams(),
       seed: int = 0, history: list | None = None) -> Solution:
    """Generational GA with elitism; returns the best individual ever seen.

    ``history`` (if given) receives the best-ever objective after the initial
    population and after each generation.
    """
    constraint = PlacementConstraint.parse(constraint)
    rng = np.random.default_rng(seed)
    space = _Space(scenario, k, constraint, rng)
    pop = [space.random_genome() for _ in range(params.population)]
    fit = np.array([space.objective(g) for g in pop])
    best_i = int(np.argmin(fit))
    best, best_val = pop[best_i].copy(), fit[best_i]
    if history is not None:
        history.append(float(best_val))

    def tournament():
        a, b = rng.integers(params.population, size=2)
        return pop[a] if fit[a] <= fit[b] else pop[b]

    for _ in range(params.generations):
        order = np.argsort(fit, kind="stable")
        children = [pop[i].copy() for i in order[:params.elitism]]
        while len(children) < params.population:
            child = tournament().copy()
            if space.k > 1 and rng.random() < params.crossover_rate:
                other = tournament()
                cut = int(rng.integers(1, space.k))
                child[cut:] = other[cut:]
            if rng.random() < params.mutation_rate:
                child[int(rng.integers(space.k))] = space.random_gene()
            children.append(child)
        pop = children
        fit = np.array([space.objective(g) for g in pop])
        i = int(np.argmin(fit))
        if fit[i] < best_val:
            best, best_val = pop[i].copy(), fit[i]
        if history is not None:
            history.append(float(best_val))

    return make_solution(scenario, space.coords(best), constraint)


def sa(scenario: Scenario, k: int, constraint: PlacementConstraint, seed: int = 0, t0: float | None = None,
       cooling: float = 0.995, steps: int = 20000, history: list | None = None) -> Solution:
    """Simulated annealing over center lists with Metropolis acceptance on the max objective.

    A move relocates one random center: to a random vertex under node placement,
    or by a Gaussian step with standard deviation equal to the temperature under
    free placement. ``t0`` defaults to a quarter of the bounding-box diagonal.
    """
    constraint = PlacementConstraint.parse(constraint)
    if t0 is None:
        t0 = scenario.diagonal() / 4 or 1.0
    if not t0 > 0:
        raise InvalidArgumentError(f"t0 must be > 0, got {t0}")
    if not 0 < cooling < 1:
        raise InvalidArgumentError(f"cooling must lie in (0, 1), got {cooling}")
    if steps < 0:
        raise InvalidArgumentError(f"steps must be >= 0, got {steps}")
    rng = np.random.default_rng(seed)
    space = _Space(scenario, k, constraint, rng)
    verts = scenario.vertices

    state = space.random_genome()
    rows = distances_to(verts, space.coords(state))
    value = float(rows.min(axis=0).max())
    best, best_val = state.copy(), value
    if history is not None:
        history.append(best_val)
    temp = t0
    for _ in range(steps):
        pos = int(rng.integers(space.k))
        if space.node:
            gene = int(rng.integers(scenario.n))
            loc = verts[gene]
        else:
            gene = state[pos] + rng.normal(0.0, temp, size=2)
            loc = gene
        old_row = rows[pos].copy()
        rows[pos] = np.hypot(verts[:, 0] - loc[0], verts[:, 1] - loc[1])
        cand = float(rows.min(axis=0).max())
        delta = cand - value
        if delta <= 0 or (temp > 0 and rng.random() < math.exp(-delta / temp)):
            state[pos] = gene
            value = cand
            if value < best_val:
                best, best_val = state.copy(), value
        else:
            rows[pos] = old_row
        if history is not None:
            history.append(best_val)
        temp *= cooling
    return make_solution(scenario, space.coords(best), constraint)
