"""Geometry, problem instances, nearest-center assignment and objective statistics."""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

NORMALIZED_SIDE = 100.0


class KCenterError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(KCenterError, ValueError):
    pass


class DegenerateScenarioError(InvalidArgumentError):
    pass


class BudgetExceededError(KCenterError):
    pass


class InfeasibleError(KCenterError):
    """An algorithm was asked to run under a constraint it does not support."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidArgumentError(f"non-finite coordinate in Point({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


def distance(p, q) -> float:
    """Euclidean distance between two points (anything unpackable to ``(x, y)``)."""
    px, py = p
    qx, qy = q
    return math.hypot(px - qx, py - qy)


def as_coords(points) -> np.ndarray:
    """Convert a sequence of points (or an ``(m, 2)`` array) to a float array."""
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
    else:
        arr = np.array([tuple(p) for p in points], dtype=float)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidArgumentError(f"expected 2-D points, got array of shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidArgumentError("points contain NaN or infinite coordinates")
    return arr


@dataclass(frozen=True, eq=False)
class Scenario:
    """A problem instance: an ordered set of customer vertices.

    Vertex ``i`` always refers to the same location; several algorithms break ties
    by vertex index, so reordering the input changes their output.
    """

    vertices: np.ndarray
    name: str = "scenario"
    normalized: bool = False

    def __post_init__(self):
        coords = as_coords(self.vertices)
        if len(coords) == 0:
            raise InvalidArgumentError("a scenario needs at least one vertex")
        coords.setflags(write=False)
        object.__setattr__(self, "vertices", coords)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def points(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self.vertices]

    def bbox(self) -> tuple[float, float, float, float]:
        lo = self.vertices.min(axis=0)
        hi = self.vertices.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def diagonal(self) -> float:
        x0, y0, x1, y1 = self.bbox()
        return math.hypot(x1 - x0, y1 - y0)


class Placement(enum.Enum):
    NODE = "node"
    FREE = "free"


@dataclass(frozen=True)
class PlacementConstraint:
    kind: Placement = Placement.NODE
    eps0: float | None = None
    eps_min: float | None = None

    def __post_init__(self):
        if self.kind is Placement.FREE and self.eps0 is not None and self.eps_min is not None:
            if not (self.eps0 > self.eps_min > 0):
                raise InvalidArgumentError(
                    f"free placement needs eps0 > eps_min > 0, got eps0={self.eps0}, eps_min={self.eps_min}")

    @classmethod
    def node(cls) -> "PlacementConstraint":
        return cls(Placement.NODE)

    @classmethod
    def free(cls, eps0: float | None = None, eps_min: float | None = None) -> "PlacementConstraint":
        return cls(Placement.FREE, eps0, eps_min)

    @classmethod
    def parse(cls, text: str | "PlacementConstraint") -> "PlacementConstraint":
        if isinstance(text, PlacementConstraint):
            return text
        try:
            return cls(Placement(str(text).lower()))
        except ValueError:
            raise InvalidArgumentError(f"unknown placement constraint {text!r} (node|free)") from None

    @property
    def is_node(self) -> bool:
        return self.kind is Placement.NODE


NODE = PlacementConstraint.node()
FREE = PlacementConstraint.free()


@dataclass(frozen=True, eq=False)
class Solution:
    centers: np.ndarray
    assignment: np.ndarray
    constraint: PlacementConstraint = field(default=NODE)

    @property
    def k(self) -> int:
        return len(self.centers)

    def center_points(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self.centers]

    def to_dict(self) -> dict:
        return {
            "constraint": self.constraint.kind.value,
            "k": self.k,
            "centers": [[float(x), float(y)] for x, y in self.centers],
            "assignment": [int(a) for a in self.assignment],
        }


@dataclass(frozen=True)
class ObjectiveReport:
    max: float
    q95: float
    median: float
    mean: float
    sum: float

    def as_row(self) -> dict:
        return {"max": self.max, "q95": self.q95, "median": self.median, "mean": self.mean}


def distances_to(coords: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Matrix of distances, shape ``(len(centers), len(coords))``."""
    diff = centers[:, None, :] - coords[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def nearest(coords: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (index of nearest center, distance to it) for every coordinate.

    ``argmin`` returns the first minimum, so ties go to the lowest center index.
    """
    if len(centers) == 0:
        raise InvalidArgumentError("at least one center is required")
    d = distances_to(coords, centers)
    idx = np.argmin(d, axis=0)
    return idx, d[idx, np.arange(d.shape[1])]


def assign(scenario: Scenario, centers) -> np.ndarray:
    centers = as_coords(centers)
    idx, _ = nearest(scenario.vertices, centers)
    return idx


def make_solution(scenario: Scenario, centers, constraint: PlacementConstraint = NODE) -> Solution:
    centers = np.array(as_coords(centers), dtype=float)
    if len(centers) == 0:
        raise InvalidArgumentError("at least one center is required")
    return Solution(centers, assign(scenario, centers), constraint)


def report_from_distances(d: np.ndarray) -> ObjectiveReport:
    d = np.sort(np.asarray(d, dtype=float))
    n = len(d)
    rank = max(1, (95 * n + 99) // 100)  # nearest rank, integer arithmetic
    total = float(d.sum())
    return ObjectiveReport(
        max=float(d[-1]),
        q95=float(d[rank - 1]),
        median=float(np.median(d)),
        mean=total / n,
        sum=total,
    )


def assigned_distances(scenario: Scenario, solution: Solution) -> np.ndarray:
    if len(solution.assignment) != scenario.n:
        raise InvalidArgumentError(
            f"solution assigns {len(solution.assignment)} vertices, scenario has {scenario.n}")
    diff = scenario.vertices - solution.centers[solution.assignment]
    return np.hypot(diff[:, 0], diff[:, 1])


def evaluate(scenario: Scenario, solution: Solution) -> ObjectiveReport:
    return report_from_distances(assigned_distances(scenario, solution))


def max_objective(scenario: Scenario, centers) -> float:
    _, d = nearest(scenario.vertices, as_coords(centers))
    return float(d.max())


def normalize(scenario: Scenario) -> Scenario:
    """Translate and scale so the bounding box's longer side spans [0, 100]."""
    x0, y0, x1, y1 = scenario.bbox()
    side = max(x1 - x0, y1 - y0)
    if side <= 0:
        raise DegenerateScenarioError("cannot normalize a scenario whose vertices all coincide")
    scaled = (scenario.vertices - np.array([x0, y0])) * (NORMALIZED_SIDE / side)
    return Scenario(scaled, scenario.name, normalized=True)


def optimum_lower_bound(s: float) -> float:
    """Lower bound on the optimal max distance given a 2-approximate value ``s``."""
    if s < 0:
        raise InvalidArgumentError(f"objective value must be non-negative, got {s}")
    return s / 2


def validate_k(scenario: Scenario, k: int) -> int:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise InvalidArgumentError(f"k must be an integer, got {k!r}")
    if k < 1 or k > scenario.n:
        raise InvalidArgumentError(f"k must be in [1, {scenario.n}], got {k}")
    return int(k)


def pairwise(scenario: Scenario) -> np.ndarray:
    """Full vertex distance matrix; node-placement algorithms index it by vertex."""
    return distances_to(scenario.vertices, scenario.vertices)


# -- scenario files ---------------------------------------------------------

def read_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise InvalidArgumentError(f"{path}: empty scenario file")
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        verts = data.get("vertices") or []
        name = data.get("name", path.stem)
    else:
        reader = csv.DictReader(text.splitlines())
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["id", "x", "y"]:
            raise InvalidArgumentError(f"{path}: expected CSV header 'id,x,y'")
        verts = [(float(row["x"]), float(row["y"])) for row in reader]
        name = path.stem
    if not verts:
        raise InvalidArgumentError(f"{path}: scenario has no vertices")
    try:
        return Scenario(np.array(verts, dtype=float), name)
    except InvalidArgumentError as exc:
        raise InvalidArgumentError(f"{path}: {exc}") from None


def write_scenario(scenario: Scenario, path: str | Path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        data = {"name": scenario.name, "vertices": [[float(x), float(y)] for x, y in scenario.vertices]}
        path.write_text(json.dumps(data) + "\n", encoding="utf-8")
        return
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "x", "y"])
        for i, (x, y) in enumerate(scenario.vertices):
            w.writerow([i, repr(float(x)), repr(float(y))])


def scenario_from_points(points: Iterable[Sequence[float]], name: str = "scenario") -> Scenario:
    return Scenario(np.array([tuple(p) for p in points], dtype=float), name)
