"""Command line interface.

Subcommands: plan, partition, gen, bench, validate, oracle, serve.
Exit codes for plan: 0 solved, 1 unsolvable or planner failure, 2
search limit hit, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import genbench, oracle, partitioner
from .plans import plan_from_json, plan_to_json, validate_plan
from .roadmap import (
    MapError,
    load_map,
    load_partition,
    reduce_graph,
    singleton_partition,
    validate_partition,
)
from .search import NODE_LIMIT, SOLVED, TIME_LIMIT

EXIT_SOLVED = 0
EXIT_FAILED = 1
EXIT_LIMIT = 2
EXIT_INPUT = 3


def _load_problem(path):
    with open(path) as f:
        return genbench.problem_from_json(json.load(f))


def cmd_plan(args):
    rm = load_map(args.map)
    partition = None
    if args.algorithm in ("subgraph", "prio-subgraph"):
        if args.partition is None:
            print("error: subgraph algorithms need --partition", file=sys.stderr)
            return EXIT_INPUT
        partition = load_partition(rm, args.partition)
        violations = validate_partition(rm, partition)
        if violations:
            for v in violations:
                print(f"error: {v}", file=sys.stderr)
            return EXIT_INPUT
    start, goal = _load_problem(args.problem)
    result = genbench.run_algorithm(
        args.algorithm,
        rm,
        partition,
        start,
        goal,
        strategy=args.search,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
    )
    metrics = result.metrics
    print(
        "outcome={} nodes_generated={} nodes_expanded={} goal_depth={} "
        "branching_factor={:.4f}".format(
            metrics.outcome,
            metrics.nodes_generated,
            metrics.nodes_expanded,
            metrics.goal_depth,
            metrics.branching_factor,
        )
    )
    if not result.solved:
        if metrics.outcome in (NODE_LIMIT, TIME_LIMIT):
            return EXIT_LIMIT
        return EXIT_FAILED
    violation = validate_plan(rm, start, goal, result.steps)
    if violation is not None:
        print(f"internal error: produced plan is invalid: {violation}", file=sys.stderr)
        return EXIT_FAILED
    payload = json.dumps(plan_to_json(result.steps), indent=2)
    if args.out:
        with open(args.out, "w") as f:
            f.write(payload + "\n")
    else:
        print(payload)
    return EXIT_SOLVED


def cmd_partition(args):
    rm = load_map(args.map)
    partition = partitioner.auto_partition(rm, seed=args.seed)
    payload = json.dumps(partition.to_json(), indent=2)
    if args.out:
        with open(args.out, "w") as f:
            f.write(payload + "\n")
    else:
        print(payload)
    stats = partitioner.partition_stats(rm, partition)
    print(
        f"subgraphs={stats['n_subgraphs']} reduced_degree={stats['reduced_degree']:.3f}",
        file=sys.stderr,
    )
    return 0


def cmd_gen(args):
    rm = genbench.gen_graph(args.vertices, args.degree, args.seed)
    payload = json.dumps(rm.to_json(), indent=2)
    if args.out:
        with open(args.out, "w") as f:
            f.write(payload + "\n")
    else:
        print(payload)
    if args.problem_out:
        start, goal = genbench.gen_problem(rm, args.robots, args.seed)
        with open(args.problem_out, "w") as f:
            json.dump(genbench.problem_to_json(start, goal), f, indent=2)
            f.write("\n")
    return 0


def cmd_bench(args):
    with open(args.config) as f:
        config = json.load(f)
    rows, failures = genbench.run_experiment(config)
    genbench.write_csv(rows, args.out)
    for value, counts in failures.items():
        label = "all" if value is None else value
        parts = " ".join(f"{a}={n}" for a, n in sorted(counts.items()))
        print(f"failures[{label}]: {parts}")
    return 0


def cmd_validate(args):
    rm = load_map(args.map)
    issues = []
    if args.partition:
        try:
            partition = load_partition(rm, args.partition)
        except MapError as exc:
            issues.append(str(exc))
        else:
            issues.extend(validate_partition(rm, partition))
    if args.plan:
        if not args.problem:
            print("error: --plan needs --problem", file=sys.stderr)
            return EXIT_INPUT
        start, goal = _load_problem(args.problem)
        with open(args.plan) as f:
            steps = plan_from_json(json.load(f))
        violation = validate_plan(rm, start, goal, steps)
        if violation is not None:
            issues.append(str(violation))
    for issue in issues:
        print(issue)
    if not issues:
        print("ok")
    return 0 if not issues else 1


def cmd_oracle(args):
    rm = load_map(args.map)
    if args.problem:
        start, goal = _load_problem(args.problem)
        plan = oracle.composite_solve(rm, start, goal)
        if plan is None:
            print("unsolvable")
            return EXIT_FAILED
        print(f"solvable, shortest plan length {len(plan)}")
        return EXIT_SOLVED
    if args.partition:
        partition = load_partition(rm, args.partition)
        states, transitions = oracle.abstract_enumerate(
            rm, partition, list(range(args.robots))
        )
        print(f"abstract states={states} transitions={transitions}")
        return 0
    states, edges = oracle.composite_enumerate(rm, args.robots)
    print(f"composite states={states} edges={edges}")
    return 0


def cmd_serve(args):
    import uvicorn

    from .server import create_app

    rm = load_map(args.map)
    partition = None
    if args.partition:
        partition = load_partition(rm, args.partition)
    app = create_app(rm, partition, save_path=args.save)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="subgraphplan",
        description="Multi-robot path planning with subgraph abstraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="solve a planning problem")
    p.add_argument("--map", required=True)
    p.add_argument("--partition")
    p.add_argument("--problem", required=True)
    p.add_argument(
        "--algorithm", default="subgraph", choices=list(genbench.ALGORITHMS)
    )
    p.add_argument("--search", default="bfs", choices=["bfs", "best-first"])
    p.add_argument("--node-limit", type=int, default=10_000_000)
    p.add_argument("--time-limit", type=float, default=300.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("partition", help="auto-partition a map")
    p.add_argument("--map", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("gen", help="generate a random map (and problem)")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--degree", type=float, required=True)
    p.add_argument("--seed", default="0")
    p.add_argument("--robots", type=int, default=3)
    p.add_argument("--out")
    p.add_argument("--problem-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run an experiment sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="validate partitions and plans")
    p.add_argument("--map", required=True)
    p.add_argument("--partition")
    p.add_argument("--plan")
    p.add_argument("--problem")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="brute-force checks on small inputs")
    p.add_argument("--map", required=True)
    p.add_argument("--problem")
    p.add_argument("--partition")
    p.add_argument("--robots", type=int, default=3)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("serve", help="run the partition editor API server")
    p.add_argument("--map", required=True)
    p.add_argument("--partition")
    p.add_argument("--save", help="path for persisting commits")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MapError, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
