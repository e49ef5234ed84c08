import numpy as np
import pytest

from kcenter.core import FREE, NODE, InvalidArgumentError, evaluate, max_objective
from kcenter.metaheuristics import GAParams, ga, sa

from conftest import random_scenario


@pytest.mark.parametrize("constraint", [NODE, FREE])
def test_ga_history_monotone_and_matches_result(constraint):
    s = random_scenario(1, 50)
    hist = []
    sol = ga(s, 4, constraint, GAParams(population=10, generations=15), seed=2, history=hist)
    assert len(hist) == 16
    assert all(b <= a for a, b in zip(hist, hist[1:]))
    assert max_objective(s, sol.centers) == pytest.approx(hist[-1])


@pytest.mark.parametrize("constraint", [NODE, FREE])
def test_sa_history_monotone_and_matches_result(constraint):
    s = random_scenario(2, 50)
    hist = []
    sol = sa(s, 3, constraint, seed=1, steps=300, history=hist)
    assert len(hist) == 301
    assert all(b <= a for a, b in zip(hist, hist[1:]))
    assert max_objective(s, sol.centers) == pytest.approx(hist[-1])


def test_zero_budget_returns_a_random_start():
    s = random_scenario(3, 30)
    assert ga(s, 3, NODE, GAParams(generations=0), seed=0).k == 3
    assert sa(s, 3, NODE, seed=0, steps=0).k == 3


def test_node_k_equals_n(square):
    assert evaluate(square, ga(square, 4, NODE, GAParams(population=4, generations=1))).max == 0
    assert evaluate(square, sa(square, 4, NODE, steps=0)).max == 0


def test_node_centers_are_vertices():
    s = random_scenario(4, 40)
    verts = {tuple(p) for p in s.vertices}
    for sol in (ga(s, 5, NODE, GAParams(population=8, generations=5)), sa(s, 5, NODE, steps=200)):
        assert all(tuple(c) in verts for c in sol.centers)


def test_free_centers_stay_in_bbox_for_ga():
    s = random_scenario(5, 40)
    sol = ga(s, 5, FREE, GAParams(population=8, generations=5))
    x0, y0, x1, y1 = s.bbox()
    assert np.all((sol.centers >= [x0, y0]) & (sol.centers <= [x1, y1]))


def test_deterministic():
    s = random_scenario(6, 40)
    p = GAParams(population=8, generations=10)
    assert np.array_equal(ga(s, 3, FREE, p, seed=4).centers, ga(s, 3, FREE, p, seed=4).centers)
    assert np.array_equal(sa(s, 3, FREE, seed=4, steps=100).centers, sa(s, 3, FREE, seed=4, steps=100).centers)


def test_sa_square_finds_ten(square):
    assert evaluate(square, sa(square, 2, NODE, steps=200)).max == pytest.approx(10)


def test_invalid_parameters(square):
    for bad in (dict(population=1), dict(elitism=25), dict(generations=-1), dict(mutation_rate=1.5)):
        with pytest.raises(InvalidArgumentError):
            GAParams(**bad)
    with pytest.raises(InvalidArgumentError):
        sa(square, 2, NODE, cooling=1.0)
    with pytest.raises(InvalidArgumentError):
        sa(square, 2, NODE, t0=0.0)
    with pytest.raises(InvalidArgumentError):
        sa(square, 2, NODE, steps=-1)
    with pytest.raises(InvalidArgumentError):
        ga(square, 5, NODE)
    with pytest.raises(InvalidArgumentError):
        sa(square, 0, FREE)
