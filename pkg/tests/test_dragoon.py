import math

import numpy as np
import pytest

from kcenter.core import FREE, NODE, InvalidArgumentError, PlacementConstraint, Scenario, evaluate
from kcenter.dragoon import (
    DragoonParams,
    Orientation,
    dragoon,
    dragoon_init,
    dragoon_refine_free,
    dragoon_refine_node,
    orientation_node,
)
from kcenter.oracle import brute_force_node, min_enclosing_circle

from conftest import random_scenario


def test_orientation_examples(square):
    p = orientation_node(square)
    assert (p.x, p.y) == (5, 5)
    s = Scenario(np.array([[0, 0], [0, 0], [3, 0]]))
    p = orientation_node(s)
    assert (p.x, p.y) == (1, 0)
    p = orientation_node(s, Orientation.MEC)
    assert (p.x, p.y) == pytest.approx((1.5, 0))


def test_init_examples(square, line):
    # every corner is sqrt(50) from the middle; lowest index wins, then the opposite corner
    assert dragoon_init(square, 2).tolist() == [[0, 0], [10, 10]]
    # mean of 0..10 is 5; farthest are 0 and 10, lowest index first
    assert dragoon_init(line, 2).tolist() == [[0, 0], [10, 0]]


def test_refine_line_reaches_optimum(line):
    sol = dragoon_refine_node(line, [(0, 0), (10, 0)])
    assert sorted(sol.centers[:, 0].tolist()) == [3, 8]
    assert evaluate(line, sol).max == 3 == evaluate(line, brute_force_node(line, 2)).max


def test_square_node(square):
    assert evaluate(square, dragoon(square, 2, NODE)).max == pytest.approx(10)


@pytest.mark.xfail(strict=True, reason="the grid search stalls at the sqrt(50) local optimum; see test below")
def test_square_free_reaches_five(square):
    assert evaluate(square, dragoon(square, 2, FREE)).max == pytest.approx(5, abs=2e-3)


def test_square_free_between_optimum_and_start(square):
    val = evaluate(square, dragoon(square, 2, FREE)).max
    assert 5 - 1e-9 <= val <= math.sqrt(50) + 1e-9


def test_refine_free_from_corner(square):
    sol = dragoon_refine_free(square, [(0, 0)], DragoonParams(eps0=5, cluster_center_candidate=False))
    assert sol.centers[0] == pytest.approx((5, 5))


@pytest.mark.parametrize("seed", range(8))
def test_free_k1_matches_mec(seed):
    s = random_scenario(seed, 20)
    _, r = min_enclosing_circle(s.vertices)
    assert evaluate(s, dragoon(s, 1, FREE)).max <= r + 2e-3


def test_k_equals_n_is_zero():
    s = random_scenario(1, 9)
    assert evaluate(s, dragoon(s, 9, NODE)).max == 0
    assert evaluate(s, dragoon(s, 9, FREE)).max == 0


@pytest.mark.parametrize("seed", range(10))
def test_within_twice_optimum(seed):
    s = random_scenario(seed, 11)
    for k in (1, 2, 3, 4):
        opt = evaluate(s, brute_force_node(s, k)).max
        assert evaluate(s, dragoon(s, k, NODE)).max <= 2 * opt + 1e-9
        assert evaluate(s, dragoon(s, k, FREE)).max <= 2 * opt + 1e-9


@pytest.mark.parametrize("constraint", [NODE, FREE])
def test_trace_lexicographically_decreasing(constraint):
    s = random_scenario(3, 120)
    trace = []
    sol = dragoon(s, 6, constraint, trace=trace)
    assert len(trace) >= 2
    assert all(b < a for a, b in zip(trace, trace[1:]))
    rep = evaluate(s, sol)
    assert trace[-1][0] == pytest.approx(rep.max)
    assert trace[-1][1] == pytest.approx(rep.mean)


def test_free_never_worse_than_node():
    for seed in range(5):
        s = random_scenario(seed, 80)
        for k in (2, 5):
            assert evaluate(s, dragoon(s, k, FREE)).max <= evaluate(s, dragoon(s, k, NODE)).max


def test_deterministic():
    s = random_scenario(4, 100)
    a, b = dragoon(s, 5, FREE), dragoon(s, 5, FREE)
    assert np.array_equal(a.centers, b.centers)


def test_frozen_centers_stay(line):
    sol = dragoon_refine_node(line, [(0, 0), (10, 0)], frozen=[True, False])
    assert sol.centers[0].tolist() == [0, 0]
    sol = dragoon_refine_free(line, [(0, 0), (10, 0)], frozen=[True, False])
    assert sol.centers[0].tolist() == [0, 0]
    with pytest.raises(InvalidArgumentError):
        dragoon_refine_node(line, [(0, 0), (10, 0)], frozen=[True])


def test_non_vertex_center_rejected(line):
    with pytest.raises(InvalidArgumentError, match="not a vertex"):
        dragoon_refine_node(line, [(0.5, 0)])


def test_constraint_eps_override(square):
    c = PlacementConstraint.free(eps0=4.0, eps_min=0.5)
    assert evaluate(square, dragoon(square, 1, c)).max == pytest.approx(math.sqrt(50))


def test_params_validation():
    with pytest.raises(InvalidArgumentError):
        DragoonParams(eps_min=0)
    with pytest.raises(InvalidArgumentError):
        DragoonParams(eps0=1e-4, eps_min=1e-3)
    with pytest.raises(InvalidArgumentError):
        DragoonParams(grid_radius=0)
    with pytest.raises(ValueError):
        DragoonParams(tie_criterion="median")
