"""Registry mapping algorithm ids (as used on the command line) to solver calls."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import baselines, clustering, greedy_grasp, metaheuristics, oracle
from .core import NODE, InfeasibleError, InvalidArgumentError, PlacementConstraint, Scenario, Solution
from .dragoon import DragoonParams, dragoon


def _monte(s, k, c, seed, p):
    return baselines.monte_carlo(s, k, seed, trials=int(p.get("trials", 3)))


def _two_approx(s, k, c, seed, p):
    return baselines.two_approx(s, k, seed)


def _kmeans(s, k, c, seed, p):
    mapping = clustering.Mapping(p.get("mapping", "every"))
    return clustering.kmeans(s, k, p.get("init", "macqueen"), c, int(p.get("restarts", clustering.DEFAULT_RESTARTS)),
                             seed, mapping)


def _greedy(s, k, c, seed, p):
    return greedy_grasp.greedy(s, k, _flag(p.get("backtrack", True)), p.get("objective", "max"))


def _grasp(s, k, c, seed, p):
    return greedy_grasp.grasp(s, k, seed, int(p.get("iterations", greedy_grasp.DEFAULT_ITERATIONS)),
                              float(p.get("rcl_alpha", greedy_grasp.DEFAULT_RCL_ALPHA)))


def _ga(s, k, c, seed, p):
    keys = ("population", "generations", "crossover_rate", "mutation_rate", "elitism")
    kwargs = {key: type(getattr(metaheuristics.GAParams(), key))(p[key]) for key in keys if key in p}
    return metaheuristics.ga(s, k, c, metaheuristics.GAParams(**kwargs), seed)


def _sa(s, k, c, seed, p):
    t0 = float(p["t0"]) if "t0" in p else None
    return metaheuristics.sa(s, k, c, seed, t0, float(p.get("cooling", 0.995)), int(p.get("steps", 20000)))


def _dragoon(s, k, c, seed, p):
    params = DragoonParams(
        eps0=float(p["eps0"]) if "eps0" in p else None,
        eps_min=float(p.get("eps_min", 1e-3)),
        tie_criterion=p.get("tie", "mean"),
        orientation=p.get("orientation", "mean"),
        grid_radius=int(p.get("grid_radius", 2)),
    )
    return dragoon(s, k, c, params)


def _brute(s, k, c, seed, p):
    return oracle.brute_force_node(s, k, int(p.get("budget", oracle.DEFAULT_BUDGET)))


def _flag(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).lower() in ("1", "true", "yes", "on")


# id -> (runner, supports free placement, display name)
REGISTRY: dict[str, tuple[Callable, bool, str]] = {
    "monte": (_monte, False, "MonteCarlo"),
    "2approx": (_two_approx, False, "2-Approx"),
    "kmeans": (_kmeans, True, "MacQueen"),
    "greedy": (_greedy, False, "Greedy"),
    "grasp": (_grasp, False, "GRASP"),
    "ga": (_ga, True, "GA"),
    "sa": (_sa, True, "SA"),
    "dragoon": (_dragoon, True, "Dragoon"),
    "brute": (_brute, False, "BruteForce"),
}


@dataclass(frozen=True)
class Algorithm:
    """An algorithm id plus its constraint, seed and extra parameters."""

    id: str
    constraint: PlacementConstraint = NODE
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.id not in REGISTRY:
            raise InvalidArgumentError(f"unknown algorithm {self.id!r}; choose from {', '.join(REGISTRY)}")
        object.__setattr__(self, "constraint", PlacementConstraint.parse(self.constraint))
        if not self.constraint.is_node and not REGISTRY[self.id][1]:
            raise InfeasibleError(f"algorithm {self.id!r} supports node placement only, not free")

    @property
    def label(self) -> str:
        return f"{REGISTRY[self.id][2]} ({self.constraint.kind.value})"

    def with_seed(self, seed: int) -> "Algorithm":
        return Algorithm(self.id, self.constraint, seed, self.params)

    def run(self, scenario: Scenario, k: int) -> Solution:
        return REGISTRY[self.id][0](scenario, k, self.constraint, self.seed, self.params)

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "Algorithm":
        """Parse ``id[:constraint][,key=value...]``, e.g. ``dragoon:free,eps_min=0.01``."""
        head, *rest = [part.strip() for part in text.split(",")]
        algo_id, _, constraint = head.partition(":")
        params = {}
        for item in rest:
            key, sep, value = item.partition("=")
            if not sep:
                raise InvalidArgumentError(f"bad algorithm parameter {item!r} in {text!r}")
            params[key.strip()] = value.strip()
        return cls(algo_id.strip(), PlacementConstraint.parse(constraint or "node"), seed, params)
