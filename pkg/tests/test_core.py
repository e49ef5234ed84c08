import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcenter.core import (
    NODE,
    DegenerateScenarioError,
    InvalidArgumentError,
    Point,
    Scenario,
    Solution,
    assign,
    distance,
    evaluate,
    make_solution,
    normalize,
    optimum_lower_bound,
    read_scenario,
    report_from_distances,
    write_scenario,
)

coord = st.floats(-1e4, 1e4, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def test_distance_examples():
    assert distance((0, 0), (3, 4)) == 5
    assert distance((1, 1), (1, 1)) == 0
    assert distance(Point(0, 0), Point(1, 1)) == pytest.approx(1.41421356, abs=1e-8)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_point_rejects_non_finite(bad):
    with pytest.raises(InvalidArgumentError):
        Point(bad, 0.0)


@given(point, point, point)
def test_distance_is_a_metric(p, q, r):
    assert distance(p, q) == distance(q, p)
    assert distance(p, p) == 0
    assert distance(p, r) <= distance(p, q) + distance(q, r) + 1e-9 * (1 + distance(p, r))


def test_assign_examples():
    two = Scenario([(0, 0), (10, 0)])
    assert assign(two, [(0, 0), (10, 0)]).tolist() == [0, 1]
    assert assign(Scenario([(5, 0)]), [(0, 0), (10, 0)]).tolist() == [0]
    corners = Scenario([(0, 0), (10, 0), (0, 10), (10, 10)])
    assert assign(corners, [(5, 0), (5, 10)]).tolist() == [0, 0, 1, 1]


def test_assign_needs_centers(square):
    with pytest.raises(InvalidArgumentError):
        assign(square, [])


@settings(max_examples=50)
@given(st.lists(point, min_size=1, max_size=30), st.lists(point, min_size=1, max_size=5))
def test_assign_is_nearest_and_idempotent(verts, centers):
    s = Scenario(verts)
    labels = assign(s, centers)
    for v, lab in zip(verts, labels):
        d = [distance(v, c) for c in centers]
        assert d[lab] == min(d)
    # re-assigning against the same centers changes nothing
    assert (assign(s, centers) == labels).all()


def test_evaluate_examples(square):
    one = make_solution(square, [(5, 5)])
    rep = evaluate(square, one)
    assert rep.max == pytest.approx(math.sqrt(50))
    assert rep.mean == pytest.approx(math.sqrt(50))

    corner = evaluate(square, make_solution(square, [(0, 0)]))
    assert corner.max == pytest.approx(math.sqrt(200))
    assert corner.mean == pytest.approx((0 + 10 + 10 + math.sqrt(200)) / 4)

    full = evaluate(square, make_solution(square, square.vertices))
    assert (full.max, full.q95, full.median, full.mean, full.sum) == (0, 0, 0, 0, 0)


def test_evaluate_rejects_mismatched_sizes(square):
    sol = Solution(np.array([[0.0, 0.0]]), np.array([0, 0]), NODE)
    with pytest.raises(InvalidArgumentError):
        evaluate(square, sol)


def test_q95_is_nearest_rank():
    # 20 values 1..20: nearest rank ceil(0.95*20) = 19
    assert report_from_distances(np.arange(1, 21)).q95 == 19
    # 10 values: rank ceil(9.5) = 10 -> the maximum
    assert report_from_distances(np.arange(1, 11)).q95 == 10
    assert report_from_distances(np.array([3.0])).q95 == 3


@settings(max_examples=60)
@given(st.lists(st.floats(0, 1e3), min_size=1, max_size=200))
def test_report_ordering(values):
    rep = report_from_distances(np.array(values))
    assert 0 <= rep.median <= rep.q95 <= rep.max
    assert 0 <= rep.mean <= rep.max * (1 + 1e-12)
    assert rep.sum == pytest.approx(rep.mean * len(values))


def test_normalize_examples():
    out = normalize(Scenario([(0, 0), (50, 0)]))
    assert out.vertices.tolist() == [[0, 0], [100, 0]]
    assert out.normalized
    out = normalize(Scenario([(10, 10), (110, 60)]))
    assert out.vertices.tolist() == [[0, 0], [100, 50]]
    again = normalize(out)
    assert np.array_equal(again.vertices, out.vertices)


def test_normalize_degenerate():
    with pytest.raises(DegenerateScenarioError):
        normalize(Scenario([(3, 3), (3, 3)]))


@settings(max_examples=50)
@given(st.lists(point, min_size=3, max_size=20, unique=True))
def test_normalize_preserves_distance_ratios(verts):
    s = Scenario(verts)
    x0, y0, x1, y1 = s.bbox()
    if max(x1 - x0, y1 - y0) < 1e-3:
        return
    out = normalize(s)
    a, b = s.vertices, out.vertices
    d_in = [distance(a[0], a[i]) for i in range(1, len(a))]
    d_out = [distance(b[0], b[i]) for i in range(1, len(b))]
    ref = max(range(len(d_in)), key=lambda i: d_in[i])
    for i in range(len(d_in)):
        assert d_out[i] / d_out[ref] == pytest.approx(d_in[i] / d_in[ref], rel=1e-9, abs=1e-12)
    lo, hi = b.min(axis=0), b.max(axis=0)
    assert lo.min() == pytest.approx(0, abs=1e-9)
    assert max(hi - lo) == pytest.approx(100)
    assert np.allclose(normalize(out).vertices, b, rtol=1e-12, atol=1e-9)


def test_optimum_lower_bound():
    assert optimum_lower_bound(112.6) == pytest.approx(56.3)
    assert optimum_lower_bound(0) == 0
    assert optimum_lower_bound(19.8) == pytest.approx(9.9)
    with pytest.raises(InvalidArgumentError):
        optimum_lower_bound(-1)


def test_scenario_rejects_empty_and_nan():
    with pytest.raises(InvalidArgumentError):
        Scenario([])
    with pytest.raises(InvalidArgumentError):
        Scenario([(0.0, math.nan)])


def test_duplicates_count_with_multiplicity():
    s = Scenario([(0, 0), (0, 0), (3, 0)])
    rep = evaluate(s, make_solution(s, [(0, 0)]))
    assert rep.sum == 3 and rep.mean == 1


@pytest.mark.parametrize("suffix", [".csv", ".json"])
def test_scenario_roundtrip(tmp_path, square, suffix):
    path = tmp_path / f"s{suffix}"
    write_scenario(square, path)
    back = read_scenario(path)
    assert np.array_equal(back.vertices, square.vertices)


def test_csv_format(tmp_path, square):
    path = tmp_path / "s.csv"
    write_scenario(square, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "id,x,y"
    assert len(lines) == 5


@pytest.mark.parametrize("text,suffix", [
    ("", ".csv"),
    ("id,x,y\n", ".csv"),
    ("id,x,y\n0,nan,1\n", ".csv"),
    ("id,x,y\n0,inf,1\n", ".csv"),
    ("a,b\n1,2\n", ".csv"),
    ('{"name": "x", "vertices": []}', ".json"),
    ('{"name": "x", "vertices": [[NaN, 1]]}', ".json"),
])
def test_readers_reject_bad_files(tmp_path, text, suffix):
    path = tmp_path / f"bad{suffix}"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(InvalidArgumentError):
        read_scenario(path)
