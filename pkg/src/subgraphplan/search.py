"""Generic search over nondeterministic choice points.

Planner algorithms are written in terms of "choose one of these
successors or fail"; this module supplies the actual backtracking as
breadth-first or greedy best-first search with duplicate pruning and
metrics instrumentation.
"""

from __future__ import annotations

import heapq
import time
from collections import deque
from dataclasses import dataclass

SOLVED = "solved"
EXHAUSTED = "exhausted"
NODE_LIMIT = "node_limit"
TIME_LIMIT = "time_limit"

DEFAULT_NODE_LIMIT = 10_000_000
DEFAULT_TIME_LIMIT = 300.0


@dataclass
class SearchMetrics:
    nodes_generated: int = 0
    nodes_expanded: int = 0
    goal_depth: int = 0
    outcome: str = EXHAUSTED

    @property
    def branching_factor(self):
        if self.nodes_expanded == 0:
            return 0.0
        return self.nodes_generated / self.nodes_expanded

    def csv_fields(self):
        return [
            self.outcome,
            self.nodes_generated,
            self.nodes_expanded,
            self.goal_depth,
            f"{self.branching_factor:.4f}",
        ]


class _Node:
    __slots__ = ("state", "parent", "action", "depth")

    def __init__(self, state, parent, action, depth):
        self.state = state
        self.parent = parent
        self.action = action
        self.depth = depth

    def path(self):
        """Actions from the root to this node."""
        actions = []
        node = self
        while node.parent is not None:
            actions.append(node.action)
            node = node.parent
        return actions[::-1]


def search(
    initial,
    expand,
    is_goal,
    key=None,
    heuristic=None,
    strategy="bfs",
    node_limit=DEFAULT_NODE_LIMIT,
    time_limit=DEFAULT_TIME_LIMIT,
    dedup=True,
):
    """Search from `initial` until `is_goal` holds.

    expand(state) yields (action, successor) pairs in a deterministic
    order.  key(state) gives the canonical form used for duplicate
    pruning (defaults to the state itself).  strategy "bfs" explores
    shallowest-first; "best-first" expands minimum heuristic(state)
    first with FIFO tie-breaking.

    Returns (actions | None, final_state | None, SearchMetrics).
    """
    if key is None:
        key = lambda s: s
    metrics = SearchMetrics()
    start_time = time.monotonic()
    root = _Node(initial, None, None, 0)
    metrics.nodes_generated = 1

    best_first = strategy == "best-first"
    if best_first:
        if heuristic is None:
            raise ValueError("best-first strategy needs a heuristic")
        counter = 0
        frontier = [(heuristic(initial), 0, root)]
    else:
        if strategy != "bfs":
            raise ValueError(f"unknown strategy {strategy!r}")
        frontier = deque([root])
    closed = {key(initial)}

    while frontier:
        if time.monotonic() - start_time > time_limit:
            metrics.outcome = TIME_LIMIT
            return None, None, metrics
        if best_first:
            _, _, node = heapq.heappop(frontier)
        else:
            node = frontier.popleft()
        metrics.nodes_expanded += 1
        if is_goal(node.state):
            metrics.outcome = SOLVED
            metrics.goal_depth = node.depth
            return node.path(), node.state, metrics
        for action, succ in expand(node.state):
            k = key(succ)
            if dedup:
                if k in closed:
                    continue
                closed.add(k)
            metrics.nodes_generated += 1
            if metrics.nodes_generated > node_limit:
                metrics.outcome = NODE_LIMIT
                return None, None, metrics
            child = _Node(succ, node, action, node.depth + 1)
            if best_first:
                counter += 1
                heapq.heappush(frontier, (heuristic(succ), counter, child))
            else:
                frontier.append(child)
    metrics.outcome = EXHAUSTED
    return None, None, metrics


# ---------------------------------------------------------------------------
# heuristics


def shortest_path_table(rm):
    """All-pairs hop distances by BFS from every vertex; unreachable
    pairs get None."""
    table = []
    for src in rm.vertices:
        dist = [None] * rm.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in rm.neighbors_out(u):
                if dist[v] is None:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        table.append(dist)
    return table


INFINITY = float("inf")


def sum_distance_heuristic(table, goal):
    """Sum of hop distances from each robot's position to its goal."""
    goals = {r: v for v, r in goal.items()}

    def h(arr):
        total = 0
        for v, r in arr.items():
            d = table[v][goals[r]]
            if d is None:
                return INFINITY
            total += d
        return total

    return h


def subgraph_max_heuristic(table, partition, goal):
    """Abstract-state heuristic: assume each robot sits at the worst
    vertex of its current subgraph and sum the distances to its goal."""
    goals = {r: v for v, r in goal.items()}

    worst = {}  # (subgraph id, goal vertex) -> max distance

    def worst_dist(sid, g):
        if (sid, g) not in worst:
            ds = [table[v][g] for v in partition[sid].vertices]
            worst[(sid, g)] = None if any(d is None for d in ds) else max(ds)
        return worst[(sid, g)]

    def h(assignment):
        """assignment maps robot -> subgraph id."""
        total = 0
        for r, sid in assignment.items():
            d = worst_dist(sid, goals[r])
            if d is None:
                return INFINITY
            total += d
        return total

    return h
