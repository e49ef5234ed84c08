"""Geometric k-center placement: the Dragoon heuristic, reference algorithms and a benchmark harness."""

from .core import (
    FREE,
    NODE,
    BudgetExceededError,
    DegenerateScenarioError,
    InfeasibleError,
    InvalidArgumentError,
    KCenterError,
    ObjectiveReport,
    PlacementConstraint,
    Point,
    Scenario,
    Solution,
    assign,
    distance,
    evaluate,
    normalize,
    optimum_lower_bound,
    read_scenario,
    write_scenario,
)
from .dragoon import DragoonParams, dragoon

__version__ = "0.1.0"
