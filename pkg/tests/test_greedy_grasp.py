import numpy as np
import pytest

from kcenter.core import InvalidArgumentError, evaluate, max_objective, pairwise
from kcenter.greedy_grasp import grasp, greedy, local_search
from kcenter.oracle import brute_force_node

from conftest import random_scenario


@pytest.mark.parametrize("seed", range(8))
def test_greedy_k1_is_exact(seed):
    s = random_scenario(seed, 15)
    assert evaluate(s, greedy(s, 1)).max == evaluate(s, brute_force_node(s, 1)).max


@pytest.mark.parametrize("seed", range(8))
def test_grasp_k1_is_exact(seed):
    s = random_scenario(seed, 15)
    assert evaluate(s, grasp(s, 1, seed=seed, iterations=2)).max == evaluate(s, brute_force_node(s, 1)).max


def test_square(square):
    assert evaluate(square, greedy(square, 2)).max == pytest.approx(10)
    assert evaluate(square, grasp(square, 2)).max == pytest.approx(10)
    assert evaluate(square, greedy(square, 4)).max == 0


def test_greedy_square_k1_lowest_index(square):
    assert greedy(square, 1).centers.tolist() == [[0, 0]]


def test_line_k2(line):
    assert evaluate(line, greedy(line, 2)).max == 3
    assert evaluate(line, grasp(line, 2, seed=1)).max == 3


@pytest.mark.parametrize("seed", range(6))
def test_backtracking_no_worse_on_samples(seed):
    s = random_scenario(seed, 60)
    for k in (3, 6):
        assert max_objective(s, greedy(s, k).centers) <= max_objective(s, greedy(s, k, backtrack=False).centers) + 1e-12


@pytest.mark.parametrize("seed", range(6))
def test_grasp_within_twice_optimum(seed):
    s = random_scenario(seed, 12)
    for k in (2, 3):
        opt = evaluate(s, brute_force_node(s, k)).max
        assert evaluate(s, grasp(s, k, seed=seed, iterations=4)).max <= 2 * opt + 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_local_search_trace_strictly_decreasing(seed):
    s = random_scenario(seed, 70)
    dist = pairwise(s)
    rng = np.random.default_rng(seed)
    trace = []
    out = local_search(dist, list(rng.choice(70, 5, replace=False)), rng, trace)
    assert all(b < a for a, b in zip(trace, trace[1:]))
    assert trace[-1] == pytest.approx(dist[out].min(axis=0).max())


def test_sum_objective_runs():
    s = random_scenario(2, 40)
    sol = greedy(s, 3, objective="sum")
    assert sol.k == 3
    with pytest.raises(InvalidArgumentError):
        greedy(s, 3, objective="median")


def test_grasp_deterministic_and_errors(square):
    s = random_scenario(3, 50)
    assert np.array_equal(grasp(s, 4, seed=7).centers, grasp(s, 4, seed=7).centers)
    with pytest.raises(InvalidArgumentError):
        grasp(square, 2, rcl_alpha=1.5)
    with pytest.raises(InvalidArgumentError):
        grasp(square, 2, iterations=0)


def test_more_iterations_never_hurt():
    # iteration i of a longer run replays the same construction
    s = random_scenario(4, 80)
    vals = [max_objective(s, grasp(s, 5, seed=2, iterations=t).centers) for t in (1, 4, 16)]
    assert vals[0] >= vals[1] >= vals[2]
