"""Arrangements, plan steps and the ground-truth plan validator.

An arrangement is an injective partial placement of robots on vertices.
Every planner in this package is checked against ``validate_plan``, which
replays a plan step by step from a start arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


class PlanStep(NamedTuple):
    robot: int
    frm: int
    to: int


class ArrangementError(ValueError):
    pass


class Arrangement:
    """Immutable injective partial map vertex -> robot, with an inverse
    robot -> vertex maintained for O(1) lookup both ways."""

    __slots__ = ("_by_vertex", "_by_robot", "_hash")

    def __init__(self, placement=()):
        by_vertex = dict(placement)
        by_robot = {}
        for v, r in by_vertex.items():
            if r in by_robot:
                raise ArrangementError(f"robot {r} placed on two vertices")
            by_robot[r] = v
        self._by_vertex = by_vertex
        self._by_robot = by_robot
        self._hash = hash(frozenset(by_vertex.items()))

    def robot_at(self, v):
        """Robot occupying v, or None if v is free."""
        return self._by_vertex.get(v)

    def vertex_of(self, r):
        return self._by_robot.get(r)

    def robots(self):
        return frozenset(self._by_robot)

    def items(self):
        return sorted(self._by_vertex.items())

    def __len__(self):
        return len(self._by_vertex)

    def __contains__(self, r):
        return r in self._by_robot

    def __eq__(self, other):
        return isinstance(other, Arrangement) and self._by_vertex == other._by_vertex

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{v}->r{r}" for v, r in self.items())
        return f"Arrangement({{{inner}}})"

    def place(self, r, v):
        """Arrangement with robot r added at v (v must be free)."""
        if v in self._by_vertex:
            raise ArrangementError(f"vertex {v} occupied")
        if r in self._by_robot:
            raise ArrangementError(f"robot {r} already placed")
        d = dict(self._by_vertex)
        d[v] = r
        return Arrangement(d)

    def remove(self, r):
        if r not in self._by_robot:
            raise ArrangementError(f"robot {r} not placed")
        d = dict(self._by_vertex)
        del d[self._by_robot[r]]
        return Arrangement(d)

    def restrict(self, vertices):
        """Induced arrangement on a vertex subset."""
        vs = set(vertices)
        return Arrangement({v: r for v, r in self._by_vertex.items() if v in vs})


def combine(parts):
    """Combine pairwise disjoint arrangements into one.

    Raises on any overlap in occupied vertices or robot ids.
    """
    merged = {}
    robots = set()
    for a in parts:
        for v, r in a.items():
            if v in merged:
                raise ArrangementError(f"vertex {v} occupied twice in combine")
            if r in robots:
                raise ArrangementError(f"robot {r} appears twice in combine")
            merged[v] = r
            robots.add(r)
    return Arrangement(merged)


def induce(a, subgraph):
    """Induced arrangement of a within a SubgraphRef."""
    return a.restrict(subgraph.vertices)


def is_applicable(rm, a, step):
    """True iff step's robot is at its source and the destination is free."""
    r, u, v = step
    return rm.has_edge(u, v) and a.robot_at(u) == r and a.robot_at(v) is None


def apply_step(rm, a, step):
    if not is_applicable(rm, a, step):
        raise ArrangementError(f"step {step} not applicable")
    return a.remove(step.robot).place(step.robot, step.to)


@dataclass(frozen=True)
class PlanViolation:
    index: int
    reason: str

    def __str__(self):
        return f"step {self.index}: {self.reason}"


def validate_plan(rm, start, goal, steps):
    """Replay steps from start; return None if the plan is legal and ends
    exactly at goal, otherwise the first PlanViolation."""
    a = start
    for i, step in enumerate(steps):
        r, u, v = step
        if not rm.has_edge(u, v):
            return PlanViolation(i, f"no edge ({u}, {v})")
        if a.robot_at(u) != r:
            return PlanViolation(i, f"robot {r} is not at vertex {u}")
        if a.robot_at(v) is not None:
            return PlanViolation(i, f"destination {v} occupied by robot {a.robot_at(v)}")
        a = a.remove(r).place(r, v)
    if a != goal:
        return PlanViolation(len(steps), "final arrangement differs from goal")
    return None


def plan_to_json(steps):
    return {"steps": [{"robot": s.robot, "from": s.frm, "to": s.to} for s in steps]}


def plan_from_json(data):
    return [PlanStep(s["robot"], s["from"], s["to"]) for s in data["steps"]]
