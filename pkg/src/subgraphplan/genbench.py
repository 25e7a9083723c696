"""Random instance generation and the experiment harness.

Graphs are built as a random spanning tree plus random extra edges up
to a target |E|/|V| ratio.  The harness sweeps one variable (vertex
count, edge density or robot count), runs the selected planners on each
generated instance and writes one CSV row per (instance, algorithm).
"""

from __future__ import annotations

import csv
import random
import statistics
import time

from . import planners
from .partitioner import auto_partition
from .plans import Arrangement
from .roadmap import RoadMap

CSV_HEADER = [
    "instance",
    "algorithm",
    "outcome",
    "nodes_generated",
    "nodes_expanded",
    "goal_depth",
    "branching_factor",
    "wall_ms",
]

ALGORITHMS = ("naive", "subgraph", "prio", "prio-subgraph")


def gen_graph(n, degree, seed):
    """Connected undirected graph with round(degree * n) edges."""
    m = round(degree * n)
    if m < n - 1:
        raise ValueError(f"degree {degree} too low to connect {n} vertices")
    if m > n * (n - 1) // 2:
        raise ValueError(f"degree {degree} infeasible for {n} vertices")
    rng = random.Random(f"{seed}:graph")
    edges = []
    present = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v, False))
        present.add((min(u, v), max(u, v)))
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or (min(u, v), max(u, v)) in present:
            continue
        edges.append((u, v, False))
        present.add((min(u, v), max(u, v)))
    return RoadMap(n, edges)


def gen_problem(rm, k, seed):
    """Random start and goal arrangements for robots 0..k-1.

    Starts are distinct and goals are distinct (chosen without
    replacement), matching the experiment setup.
    """
    if k > rm.n:
        raise ValueError(f"{k} robots exceed {rm.n} vertices")
    rng = random.Random(f"{seed}:problem")
    starts = rng.sample(range(rm.n), k)
    goals = rng.sample(range(rm.n), k)
    start = Arrangement({v: r for r, v in enumerate(starts)})
    goal = Arrangement({v: r for r, v in enumerate(goals)})
    return start, goal


def problem_to_json(start, goal):
    robots = sorted(start.robots())
    return {
        "robots": [
            {"id": r, "start": start.vertex_of(r), "goal": goal.vertex_of(r)}
            for r in robots
        ]
    }


def problem_from_json(data):
    start = Arrangement({e["start"]: e["id"] for e in data["robots"]})
    goal = Arrangement({e["goal"]: e["id"] for e in data["robots"]})
    return start, goal


def run_algorithm(name, rm, partition, start, goal, strategy="bfs", **limits):
    """Dispatch to one of the four planners by its CLI name."""
    if name == "naive":
        return planners.plan_naive(rm, start, goal, strategy=strategy, **limits)
    if name == "subgraph":
        return planners.plan_subgraph(rm, partition, start, goal, strategy=strategy, **limits)
    if name == "prio":
        return planners.plan_prioritised(rm, start, goal, strategy=strategy, **limits)
    if name == "prio-subgraph":
        return planners.plan_prioritised_subgraph(
            rm, partition, start, goal, strategy=strategy, **limits
        )
    raise ValueError(f"unknown algorithm {name!r}")


DEFAULT_CONFIG = {
    "n_vertices": 30,
    "degree": 3.0,
    "n_robots": 3,
    "sweep": None,  # one of n_vertices | degree | n_robots, or None
    "values": [],
    "trials": 25,
    "algorithms": list(ALGORITHMS),
    "strategy": "bfs",
    "seed": 0,
    "node_limit": 10_000_000,
    "time_limit": 300.0,
    "record_wall_ms": True,
}


def _point_params(cfg, value):
    params = {
        "n_vertices": cfg["n_vertices"],
        "degree": cfg["degree"],
        "n_robots": cfg["n_robots"],
    }
    if cfg["sweep"] is not None:
        params[cfg["sweep"]] = value
    return params


def run_experiment(config):
    """Run a sweep; returns (csv rows, failure summary).

    The failure summary maps sweep value -> {algorithm: failure count}
    for the prioritised planners, mirroring the failure tables of the
    experiment writeups.
    """
    cfg = dict(DEFAULT_CONFIG)
    cfg.update(config)
    unknown = set(cfg) - set(DEFAULT_CONFIG)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    values = cfg["values"] if cfg["sweep"] is not None else [None]
    rows = []
    failures = {}
    for value in values:
        params = _point_params(cfg, value)
        fail_counts = {a: 0 for a in cfg["algorithms"]}
        for trial in range(cfg["trials"]):
            tag = f"{cfg['seed']}:{value}:{trial}"
            rm = gen_graph(params["n_vertices"], params["degree"], tag)
            start, goal = gen_problem(rm, params["n_robots"], tag)
            partition = auto_partition(rm, seed=tag)
            instance = f"v{value}-t{trial}" if value is not None else f"t{trial}"
            for algo in cfg["algorithms"]:
                t0 = time.monotonic()
                result = run_algorithm(
                    algo,
                    rm,
                    partition,
                    start,
                    goal,
                    strategy=cfg["strategy"],
                    node_limit=cfg["node_limit"],
                    time_limit=cfg["time_limit"],
                )
                wall_ms = (time.monotonic() - t0) * 1000.0
                if not result.solved:
                    fail_counts[algo] += 1
                rows.append(
                    [instance, algo]
                    + result.metrics.csv_fields()
                    + [f"{wall_ms:.1f}" if cfg["record_wall_ms"] else "0"]
                )
        failures[value] = fail_counts
    return rows, failures


def write_csv(rows, path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)


def summarize(rows, field):
    """Median and quartiles of a numeric CSV field, per algorithm,
    over solved rows only."""
    idx = CSV_HEADER.index(field)
    per_algo = {}
    for row in rows:
        if row[2] != "solved":
            continue
        per_algo.setdefault(row[1], []).append(float(row[idx]))
    out = {}
    for algo, xs in per_algo.items():
        xs.sort()
        out[algo] = {
            "median": statistics.median(xs),
            "q1": xs[len(xs) // 4],
            "q3": xs[(3 * len(xs)) // 4],
            "count": len(xs),
        }
    return out
