"""Command-line entry point: ``kcenter {generate,solve,sweep,compare,deviation,cost}``.

Config files (``--config FILE``) are flat ``key = value`` text, one pair per
line, ``#`` starts a comment. Keys mirror the long flag names with dashes or
underscores (``eps-min`` == ``eps_min``); repeatable flags take a
comma-separated list (``scenario = a.csv, b.csv``). ``algo`` entries are
separated by ``;`` because a single entry may carry ``,key=value`` options.
Scenario paths in a config file are relative to the file itself; ``out`` is
relative to the working directory. Flags given on the command line override
the config file.

Exit codes: 0 success, 2 usage or invalid input, 3 budget or feasibility error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import harness
from .algorithms import Algorithm
from .core import (
    BudgetExceededError,
    InfeasibleError,
    InvalidArgumentError,
    KCenterError,
    evaluate,
    read_scenario,
    write_scenario,
)
from .dragoon import DragoonParams

EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


class UsageError(KCenterError):
    pass


def parse_k_values(text) -> list[int]:
    """``"1..5"`` -> [1..5], ``"1..50:10"`` -> [1, 11, ...], ``"1,2,5"`` -> [1, 2, 5]."""
    if isinstance(text, int):
        return [text]
    out: list[int] = []
    try:
        for part in str(text).split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                lo, _, rest = part.partition("..")
                hi, _, step = rest.partition(":")
                out.extend(range(int(lo), int(hi) + 1, int(step or 1)))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse k values {text!r}") from None
    if not out:
        raise UsageError("no k values given")
    return out


def read_config(path: str | Path) -> dict[str, str]:
    config = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        config[key.strip().replace("-", "_")] = value.strip()
    return config


# flag dest -> how a config string becomes a value
_LIST_KEYS = {"scenario": ",", "algo": ";"}


def _merge_config(args: argparse.Namespace, allowed: set[str]) -> argparse.Namespace:
    if not getattr(args, "config", None):
        return args
    config = read_config(args.config)
    base = Path(args.config).parent
    unknown = sorted(set(config) - allowed)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for key, value in config.items():
        if getattr(args, key, None) not in (None, []):
            continue  # command line wins
        if key in _LIST_KEYS:
            value = [v.strip() for v in value.split(_LIST_KEYS[key]) if v.strip()]
        if key == "scenario":
            value = [str(base / v) for v in value]
        setattr(args, key, value)
    return args


def _default_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("KCENTER_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"KCENTER_SEED must be an integer, got {env!r}") from None
    return 0


def _algo_params(args) -> dict[str, str]:
    params = {}
    for name in ("trials", "restarts", "iterations", "rcl_alpha", "eps0", "eps_min", "init", "budget"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    for item in getattr(args, "param", None) or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        params[key.strip()] = value.strip()
    return params


def _algorithm(spec: str, args, seed: int) -> Algorithm:
    algo = Algorithm.parse(spec, seed)
    extra = _algo_params(args)
    if extra:
        algo = Algorithm(algo.id, algo.constraint, seed, {**extra, **algo.params})
    return algo


def _scenarios(args) -> list:
    paths = args.scenario or []
    scenarios = [read_scenario(p) for p in paths]
    count = getattr(args, "generate", None)
    if count is not None:
        scenarios += harness.benchmark_scenarios(int(count), _default_seed(args.seed))
    if not scenarios:
        raise UsageError("no scenarios: pass --scenario FILE or --generate N")
    return scenarios


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) in (None, [])]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _print(text: str = "") -> None:
    sys.stdout.write(text + "\n")


# -- subcommands ----------------------------------------------------------------

def cmd_generate(args) -> int:
    _require(args, "kind", "n", "out")
    n, seed = int(args.n), _default_seed(args.seed)
    if n < 1:
        raise UsageError("--n must be >= 1")
    if args.kind == "uniform":
        scenario = harness.generate_uniform(n, seed)
    else:
        scenario = harness.generate_clustered(n, int(args.blobs or 5), float(args.spread or 5.0), seed)
    write_scenario(scenario, args.out)
    return 0


def cmd_solve(args) -> int:
    _require(args, "scenario", "algo", "k")
    scenario = read_scenario(args.scenario[0])
    spec = args.algo[0]
    if args.constraint:
        spec = spec.split(",")[0].partition(":")[0] + ":" + args.constraint + spec[len(spec.split(",")[0]):]
    algo = _algorithm(spec, args, _default_seed(args.seed))
    solution = algo.run(scenario, int(args.k))
    report = evaluate(scenario, solution)
    if args.out:
        data = {"scenario": scenario.name, "algorithm": algo.id, **solution.to_dict(),
                "report": {"max": report.max, "q95": report.q95, "median": report.median,
                           "mean": report.mean, "sum": report.sum}}
        Path(args.out).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
    for key in ("max", "q95", "median", "mean", "sum"):
        _print(f"{key}: {getattr(report, key):.6g}")
    return 0


def cmd_sweep(args) -> int:
    _require(args, "algo", "k", "out")
    scenario = _scenarios(args)[0]
    algo = _algorithm(args.algo[0], args, _default_seed(args.seed))
    rows = harness.sweep_k(scenario, algo, parse_k_values(args.k), int(args.jobs or 1))
    harness.write_sweep(rows, args.out)
    k, found = harness.saturation_point(rows, float(args.threshold or 1.0))
    _print(f"saturation_k: {k}" + ("" if found else " (not reached)"))
    return 0


def cmd_compare(args) -> int:
    _require(args, "algo", "k", "out")
    seed = _default_seed(args.seed)
    algos = [_algorithm(spec, args, seed) for spec in args.algo]
    rows = harness.compare_algorithms(_scenarios(args), algos, parse_k_values(args.k), int(args.jobs or 1))
    harness.write_compare(rows, args.out)
    return 0


def cmd_deviation(args) -> int:
    _require(args, "k", "out")
    params = DragoonParams(eps_min=float(args.eps_min)) if args.eps_min is not None else DragoonParams()
    rows = harness.free_vs_node(_scenarios(args), parse_k_values(args.k), params, int(args.jobs or 1))
    harness.write_deviation(rows, args.out)
    return 0


def cmd_cost(args) -> int:
    _require(args, "algo", "k", "out")
    scenario = _scenarios(args)[0]
    algo = _algorithm(args.algo[0], args, _default_seed(args.seed))
    model = harness.CostModel(float(args.setup or 0), float(args.operating or 0), float(args.transport or 0),
                              args.basis or "sum")
    best, rows = harness.cost_optimum(scenario, algo, model, parse_k_values(args.k), int(args.jobs or 1))
    harness.write_cost(rows, args.out)
    _print(f"optimal_k: {best}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kcenter", description="Geometric k-center placement toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, scenarios=True, algo=True, jobs=True):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--seed", type=int, help="base seed (default: $KCENTER_SEED or 0)")
        p.add_argument("--out", help="output file")
        if scenarios:
            p.add_argument("--scenario", action="append", help="scenario file (.csv or .json); repeatable")
            p.add_argument("--generate", type=int, help="add N generated benchmark scenarios")
        if algo:
            p.add_argument("--algo", action="append",
                           help="algorithm id[:node|free][,key=value...]; repeatable where sensible")
            p.add_argument("--param", action="append", help="extra algorithm parameter KEY=VALUE")
            for flag, typ in (("--trials", int), ("--restarts", int), ("--iterations", int),
                              ("--rcl-alpha", float), ("--eps0", float), ("--budget", int), ("--init", str)):
                p.add_argument(flag, type=typ)
        p.add_argument("--eps-min", type=float)
        if jobs:
            p.add_argument("--jobs", type=int, help="parallel worker processes (default 1)")

    g = sub.add_parser("generate", help="write a synthetic scenario CSV")
    g.add_argument("--config")
    g.add_argument("--kind", choices=["uniform", "clustered"])
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--blobs", type=int, help="cluster count for --kind clustered (default 5)")
    g.add_argument("--spread", type=float, help="cluster standard deviation (default 5)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate, subparser=g)

    s = sub.add_parser("solve", help="run one algorithm on one scenario")
    common(s, jobs=False)
    s.add_argument("--k", type=int)
    s.add_argument("--constraint", choices=["node", "free"])
    s.set_defaults(func=cmd_solve, subparser=s)

    sw = sub.add_parser("sweep", help="objective statistics over a range of k (sweep.csv)")
    common(sw)
    sw.add_argument("--k", help="k values, e.g. 1..20 or 1,2,5,10")
    sw.add_argument("--threshold", type=float, help="saturation threshold in percent (default 1)")
    sw.set_defaults(func=cmd_sweep, subparser=sw)

    c = sub.add_parser("compare", help="mean statistics per algorithm and k (compare.csv)")
    common(c)
    c.add_argument("--k")
    c.set_defaults(func=cmd_compare, subparser=c)

    d = sub.add_parser("deviation", help="Dragoon free vs node placement (deviation.csv)")
    common(d, algo=False)
    d.add_argument("--k")
    d.set_defaults(func=cmd_deviation, subparser=d)

    co = sub.add_parser("cost", help="cost-optimal number of centers (cost.csv)")
    common(co)
    co.add_argument("--k")
    co.add_argument("--setup", type=float, help="setup cost per center")
    co.add_argument("--operating", type=float, help="operating cost per center")
    co.add_argument("--transport", type=float, help="transport cost per unit of distance")
    co.add_argument("--basis", choices=["sum", "max"], help="distance statistic driving transport cost")
    co.set_defaults(func=cmd_cost, subparser=co)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args.subparser
    allowed = {a.dest for a in sub._actions if a.dest not in ("help", "config", "subparser")}
    try:
        _merge_config(args, allowed)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"kcenter {args.command}: {exc}\n")
        sub.print_usage(sys.stderr)
        return EXIT_USAGE
    except (BudgetExceededError, InfeasibleError) as exc:
        sys.stderr.write(f"kcenter {args.command}: {exc}\n")
        return EXIT_INFEASIBLE
    except (InvalidArgumentError, OSError, ValueError) as exc:
        sys.stderr.write(f"kcenter {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
