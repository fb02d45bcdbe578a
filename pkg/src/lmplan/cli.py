"""Command-line interface.

Exit codes: 0 solved/ok, 1 unsolved or property-false, 2 usage error.
LMPLAN_TIME_LIMIT overrides the default per-search time limit in seconds.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bench as bench_mod
from .control import ControlConfig, run_control
from .core import PlanningError, format_plan, validate_plan
from .oracles import (
    CapExceeded,
    DEFAULT_STATE_CAP,
    oracle_gn,
    oracle_inconsistent,
    oracle_landmark,
    oracle_n,
    oracle_reasonable,
)
from .pddl import ground_files
from .pipeline import PipelineConfig, build_landmark_graph
from .planners import PLANNERS, SearchLimits


def _default_time_limit() -> float:
    env = os.environ.get("LMPLAN_TIME_LIMIT")
    if env:
        try:
            return float(env)
        except ValueError:
            raise SystemExit(2)
    return 60.0


def _load_task(args):
    with open(args.domain) as fh:
        domain = fh.read()
    with open(args.problem) as fh:
        problem = fh.read()
    return ground_files(domain, problem)


def _add_task_args(p):
    p.add_argument("domain", help="domain PDDL file")
    p.add_argument("problem", help="problem PDDL file")


def cmd_ground(args) -> int:
    task = _load_task(args)
    print(f"task: {task.name}")
    print(f"facts: {task.num_facts}")
    print(f"actions: {len(task.actions)} (pruned {len(task.pruned_actions)})")
    print(f"goal facts: {len(task.facts_in(task.goal))}")
    if task.provably_unsolvable:
        print("provably unsolvable: goal unreachable even ignoring deletes")
        return 1
    return 0


def cmd_landmarks(args) -> int:
    task = _load_task(args)
    config = PipelineConfig(
        level_test=not args.no_level_test,
        lookahead=not args.no_lookahead,
        reasonable=not args.no_reasonable,
        obedient=not args.no_obedient,
    )
    g = build_landmark_graph(task, config)
    if args.emit:
        sys.stdout.write(bench_mod.export_lgg(task, g, args.emit))
        return 0
    print(f"landmarks: {len(g)}")
    for n in g.nodes:
        print(f"  {task.facts[n].name}")
    print(f"orders: {len(g.edges)}")
    for s, d, k in g.edges:
        print(f"  {task.facts[s].name} ->{k.value} {task.facts[d].name}")
    return 0


def cmd_plan(args) -> int:
    task = _load_task(args)
    if task.provably_unsolvable:
        print("unsolvable", file=sys.stderr)
        return 1
    planner = PLANNERS[args.planner]
    limits = SearchLimits(args.node_limit, args.time_limit)
    if args.landmarks == "on":
        g = build_landmark_graph(task)
        cfg = ControlConfig(mode=args.mode, safety_net=args.safety_net, limits=limits)
        trace = run_control(task, g, planner, cfg)
        if not trace.solved:
            print(f"failed: {trace.outcome.value}", file=sys.stderr)
            return 1
        plan = trace.plan
    else:
        res = planner(task, limits)
        if not res.solved:
            print(f"failed: {res.outcome.value}", file=sys.stderr)
            return 1
        plan = res.plan
    if not validate_plan(task, plan):
        raise PlanningError("planner returned an invalid plan")
    if plan:
        print(format_plan(task, plan))
    print(f"; length {len(plan)}", file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    task = _load_task(args)
    cap = args.cap
    try:
        if args.property == "landmark":
            value = oracle_landmark(task, task.fact_named(args.facts[0]).id, cap)
        elif args.property == "gn":
            value = oracle_gn(task, task.fact_named(args.facts[0]).id,
                              task.fact_named(args.facts[1]).id, cap)
        elif args.property == "n":
            value = oracle_n(task, task.fact_named(args.facts[0]).id,
                             task.fact_named(args.facts[1]).id, cap)
        elif args.property == "r":
            value = oracle_reasonable(task, task.fact_named(args.facts[0]).id,
                                      task.fact_named(args.facts[1]).id, cap)
        elif args.property == "mutex":
            value = oracle_inconsistent(task, task.fact_named(args.facts[0]).id,
                                        task.fact_named(args.facts[1]).id, cap)
        else:
            return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 1
    print("true" if value else "false")
    return 0 if value else 1


def cmd_gen(args) -> int:
    if args.kind in ("blocksworld-arm", "blocksworld-no-arm"):
        variant = args.kind.removeprefix("blocksworld-")
        text = bench_mod.gen_blocksworld(args.size, variant, args.seed)
    else:
        text = bench_mod.gen_logistics(args.cities, args.locs, args.planes,
                                       args.packages, args.seed)
    out = sys.stdout if args.output == "-" else open(args.output, "w")
    out.write(text)
    if args.emit_domain:
        with open(args.emit_domain, "w") as fh:
            fh.write(bench_mod.DOMAIN_TEXTS[args.kind])
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_bench(args) -> int:
    if args.domain == "logistics":
        sizes = [tuple(int(x) for x in s.split("x")) for s in args.sizes.split(",")]
    else:
        sizes = [int(s) for s in args.sizes.split(",")]
    records = bench_mod.run_benchmark(
        args.domain, sizes, args.instances, args.seed_base,
        args.configs.split(","), args.time_limit, args.node_limit,
        workers=args.workers)
    csv_text = bench_mod.records_to_csv(records)
    if args.output == "-":
        sys.stdout.write(csv_text)
    else:
        with open(args.output, "w") as fh:
            fh.write(csv_text)
    if args.series:
        with open(args.series, "w") as fh:
            fh.write(bench_mod.solved_series_csv(records))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lmplan",
                                 description="landmark-guided STRIPS planning toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground", help="parse and ground a PDDL pair")
    _add_task_args(p)
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("landmarks", help="extract the ordered landmark graph")
    _add_task_args(p)
    p.add_argument("--no-level-test", action="store_true",
                   help="intersect over all achievers (safe variant)")
    p.add_argument("--no-lookahead", action="store_true")
    p.add_argument("--no-reasonable", action="store_true")
    p.add_argument("--no-obedient", action="store_true")
    p.add_argument("--emit", choices=["dot", "json"])
    p.set_defaults(func=cmd_landmarks)

    p = sub.add_parser("plan", help="solve a task")
    _add_task_args(p)
    p.add_argument("--planner", choices=sorted(PLANNERS), default="gbfs")
    p.add_argument("--landmarks", choices=["on", "off"], default="on")
    p.add_argument("--mode", choices=["disj", "conjdisj", "dnf"], default="disj")
    p.add_argument("--safety-net", action="store_true")
    p.add_argument("--time-limit", type=float, default=_default_time_limit())
    p.add_argument("--node-limit", type=int, default=1_000_000)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("oracle", help="exact checks on enumerable tasks")
    p.add_argument("property", choices=["landmark", "gn", "n", "r", "mutex"])
    _add_task_args(p)
    p.add_argument("facts", nargs="+", help='facts like "(clear c)"')
    p.add_argument("--cap", type=int, default=DEFAULT_STATE_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("kind", choices=["blocksworld-arm", "blocksworld-no-arm", "logistics"])
    p.add_argument("--size", type=int, default=4, help="block count")
    p.add_argument("--cities", type=int, default=2)
    p.add_argument("--locs", type=int, default=2)
    p.add_argument("--planes", type=int, default=1)
    p.add_argument("--packages", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--emit-domain", help="also write the domain file here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark suite, emit CSV")
    p.add_argument("--domain", choices=sorted(bench_mod.DOMAIN_TEXTS), required=True)
    p.add_argument("--sizes", required=True,
                   help="comma list; logistics sizes as CxLxPxK")
    p.add_argument("--instances", type=int, default=10)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--configs", default="bfs,bfs+L")
    p.add_argument("--time-limit", type=float, default=_default_time_limit())
    p.add_argument("--node-limit", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1,
                   help="parallel worker processes (default sequential)")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--series", help="also write solved-vs-time series CSV here")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "oracle":
        need = 1 if args.property == "landmark" else 2
        if len(args.facts) != need:
            ap.error(f"{args.property} takes {need} fact argument(s)")
    try:
        return args.func(args)
    except (PlanningError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
