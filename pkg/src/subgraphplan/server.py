"""HTTP API for the partition editor.

A single working session holds one map and one working partition.  The
editor never builds partitions client-side: it asks /suggest for grown
candidates, commits them one at a time, and validates the result here.
"""

from __future__ import annotations

import json
import random
import threading

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import genbench, partitioner
from .plans import plan_to_json, validate_plan
from .roadmap import (
    CLIQUE,
    HALL,
    KINDS,
    RING,
    SINGLETON,
    Partition,
    SubgraphRef,
    check_structure,
    validate_partition,
)


class Session:
    """The single working session: map plus committed subgraphs."""

    def __init__(self, rm, partition=None, save_path=None):
        self.rm = rm
        self.save_path = save_path
        self.lock = threading.Lock()
        self.committed = []  # list of (kind, vertex tuple)
        if partition is not None:
            for s in partition.subgraphs:
                self.committed.append((s.kind, tuple(s.vertices)))

    def used_vertices(self):
        return {v for _, vs in self.committed for v in vs}

    def working_partition(self, fill_singletons=False):
        subs = []
        for i, (kind, vs) in enumerate(self.committed):
            subs.append(SubgraphRef(i, kind, vs))
        if fill_singletons:
            used = self.used_vertices()
            for v in self.rm.vertices:
                if v not in used:
                    subs.append(SubgraphRef(len(subs), SINGLETON, (v,)))
        return Partition(tuple(subs))

    def persist(self):
        if self.save_path:
            with open(self.save_path, "w") as f:
                json.dump(self.working_partition().to_json(), f, indent=2)
                f.write("\n")


def _bad_request(msg):
    return JSONResponse(status_code=400, content={"error": msg})


def create_app(rm, partition=None, save_path=None):
    session = Session(rm, partition, save_path)
    app = FastAPI(title="subgraphplan partition editor")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/map")
    def get_map():
        return session.rm.to_json()

    @app.get("/partition")
    def get_partition():
        with session.lock:
            return session.working_partition().to_json()

    @app.post("/suggest")
    def suggest(body: dict):
        seed = body.get("seed")
        if (
            not isinstance(seed, list)
            or len(seed) != 2
            or not all(isinstance(x, int) for x in seed)
        ):
            return _bad_request("'seed' must be a pair of vertex ids")
        u, v = seed
        if not (0 <= u < rm.n and 0 <= v < rm.n):
            return _bad_request("seed vertex out of range")
        if not rm.has_symmetric_edge(u, v):
            return _bad_request("seed vertices are not adjacent")
        kinds = [body["kind"]] if "kind" in body else [HALL, RING, CLIQUE]
        if any(k not in (HALL, RING, CLIQUE) for k in kinds):
            return _bad_request("kind must be hall, ring or clique")
        with session.lock:
            used = session.used_vertices()
            if u in used or v in used:
                return _bad_request("seed vertices already committed")
            rng = random.Random(f"suggest:{u}:{v}")
            candidates = []
            for kind in kinds:
                cand = partitioner.grow(rm, used, (u, v), kind, rng)
                if cand is not None:
                    candidates.append(cand)
        candidates.sort(key=lambda c: -len(c[1]))
        return {
            "candidates": [
                {"kind": kind, "vertices": sorted(vs)} for kind, vs in candidates
            ]
        }

    @app.post("/partition/commit")
    def commit(body: dict):
        sub = body.get("subgraph")
        if (
            not isinstance(sub, dict)
            or sub.get("kind") not in KINDS
            or not isinstance(sub.get("vertices"), list)
        ):
            return _bad_request("'subgraph' must have a kind and a vertex list")
        with session.lock:
            used = session.used_vertices()
            overlap = sorted(set(sub["vertices"]) & used)
            if overlap:
                return JSONResponse(
                    status_code=409,
                    content={"error": f"vertices already committed: {overlap}"},
                )
            order, reason = check_structure(rm, sub["kind"], sub["vertices"])
            if order is None:
                return JSONResponse(status_code=422, content={"error": reason})
            session.committed.append((sub["kind"], order))
            session.persist()
            return session.working_partition().to_json()

    @app.post("/partition/undo")
    def undo():
        with session.lock:
            if session.committed:
                session.committed.pop()
                session.persist()
            return session.working_partition().to_json()

    @app.post("/partition/validate")
    def validate():
        with session.lock:
            partition = session.working_partition()
        return {"violations": validate_partition(rm, partition)}

    @app.post("/plan/preview")
    def preview(body: dict):
        problem = body.get("problem")
        algorithm = body.get("algorithm", "subgraph")
        if algorithm not in genbench.ALGORITHMS:
            return _bad_request(f"unknown algorithm {algorithm!r}")
        if not isinstance(problem, dict) or "robots" not in problem:
            return _bad_request("'problem' must have a robot list")
        try:
            start, goal = genbench.problem_from_json(problem)
        except (KeyError, TypeError, ValueError) as exc:
            return _bad_request(f"bad problem: {exc}")
        with session.lock:
            # uncovered vertices act as singletons for preview purposes
            partition = session.working_partition(fill_singletons=True)
        result = genbench.run_algorithm(
            algorithm,
            rm,
            partition,
            start,
            goal,
            strategy=body.get("search", "bfs"),
            node_limit=int(body.get("node_limit", 1_000_000)),
            time_limit=float(body.get("time_limit", 30.0)),
        )
        metrics = result.metrics
        payload = {
            "outcome": metrics.outcome,
            "nodes_generated": metrics.nodes_generated,
            "nodes_expanded": metrics.nodes_expanded,
            "goal_depth": metrics.goal_depth,
            "branching_factor": metrics.branching_factor,
            "plan": None,
        }
        if result.solved:
            violation = validate_plan(rm, start, goal, result.steps)
            if violation is not None:
                return JSONResponse(
                    status_code=500,
                    content={"error": f"planner produced an invalid plan: {violation}"},
                )
            payload["plan"] = plan_to_json(result.steps)
        return payload

    return app
