"""Brute-force ground truth for the planners and the structure calculus.

Everything here works on its own flat encodings (position tuples for
composite states, frozensets of (vertex, robot) pairs for subgraph
arrangements) and never calls into the structure or planner modules.
The point is independence: these routines are exponential by design and
exist so the clever code has something honest to be checked against.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations

from .plans import PlanStep


class OracleGuard(ValueError):
    """Raised when an input exceeds the size guard of an oracle routine."""


# ---------------------------------------------------------------------------
# composite-space search and enumeration


def _composite_moves(rm, robots, state):
    """Applicable (robot index, u, v) moves from a composite state.

    state is a tuple of vertex positions, indexed like `robots`.
    """
    occupied = set(state)
    for i in range(len(robots)):
        u = state[i]
        for v in rm.neighbors_out(u):
            if v not in occupied:
                yield i, u, v


def composite_solve(rm, start, goal, max_nodes=None):
    """Shortest plan between two arrangements by BFS over the composite
    space, or None if no plan exists.  Guarded to n <= 12, k <= 4."""
    robots = sorted(start.robots())
    if sorted(goal.robots()) != robots:
        raise ValueError("start and goal must place the same robots")
    if rm.n > 12 or len(robots) > 4:
        raise OracleGuard(f"composite_solve guard: n={rm.n}, k={len(robots)}")
    s0 = tuple(start.vertex_of(r) for r in robots)
    s1 = tuple(goal.vertex_of(r) for r in robots)
    if s0 == s1:
        return []
    parent = {s0: None}
    queue = deque([s0])
    while queue:
        state = queue.popleft()
        for i, u, v in _composite_moves(rm, robots, state):
            nxt = state[:i] + (v,) + state[i + 1:]
            if nxt in parent:
                continue
            parent[nxt] = (state, PlanStep(robots[i], u, v))
            if nxt == s1:
                steps = []
                cur = nxt
                while parent[cur] is not None:
                    cur, step = parent[cur]
                    steps.append(step)
                return steps[::-1]
            queue.append(nxt)
        if max_nodes is not None and len(parent) > max_nodes:
            raise OracleGuard("composite_solve node budget exceeded")
    return None


def composite_enumerate(rm, k):
    """State and edge counts of the full collision-free composite graph
    for k labeled robots, by direct enumeration.

    Edges are unordered state pairs; a pair connected only one way (via
    a directed map edge) still counts once.
    """
    n = rm.n
    if k > n:
        raise ValueError(f"robot count {k} exceeds {n} vertices")
    try:
        from math import perm
        if perm(n, k) > 2_000_000:
            raise OracleGuard(f"composite_enumerate guard: P({n},{k}) too large")
    except OverflowError:
        raise OracleGuard("composite_enumerate guard: count overflow")
    robots = list(range(k))
    states = 0
    edge_pairs = set()
    for state in permutations(range(n), k):
        states += 1
        for i, u, v in _composite_moves(rm, robots, state):
            nxt = state[:i] + (v,) + state[i + 1:]
            edge_pairs.add(frozenset((state, nxt)))
    return states, len(edge_pairs)


# ---------------------------------------------------------------------------
# per-subgraph equivalence classes

# An oracle arrangement is a frozenset of (vertex, robot) pairs over the
# subgraph's local vertex indices 0..n-1.


def shape_adjacency(kind, n):
    """Intra-subgraph adjacency of an idealized structure on 0..n-1."""
    adj = {v: set() for v in range(n)}
    if kind in ("stack", "hall"):
        for v in range(n - 1):
            adj[v].add(v + 1)
            adj[v + 1].add(v)
    elif kind == "clique":
        for u in range(n):
            adj[u] = set(range(n)) - {u}
    elif kind == "ring":
        if n < 3:
            raise ValueError("ring needs at least 3 vertices")
        for v in range(n):
            adj[v].add((v + 1) % n)
            adj[v].add((v - 1) % n)
    elif kind == "singleton":
        if n != 1:
            raise ValueError("singleton has exactly one vertex")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return adj


def all_arrangements(n, robots):
    """Every injective placement of all the given robots on 0..n-1."""
    robots = sorted(robots)
    return [
        frozenset(zip(verts, robots)) for verts in permutations(range(n), len(robots))
    ]


def _arr_moves(adj, arr):
    occupied = {v for v, _ in arr}
    for v, r in arr:
        for w in adj[v]:
            if w not in occupied:
                yield frozenset((arr - {(v, r)}) | {(w, r)})


def reachability_classes(adj, n, robots):
    """Mutual-reachability classes of the arrangements of `robots`.

    All intra-subgraph moves are reversible (the shapes are undirected),
    so the classes are the connected components of the move graph.
    """
    if n > 7:
        raise OracleGuard(f"reachability guard: n={n}")
    remaining = set(all_arrangements(n, robots))
    classes = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        frontier = [seed]
        while frontier:
            a = frontier.pop()
            for b in _arr_moves(adj, a):
                if b not in comp:
                    comp.add(b)
                    frontier.append(b)
        remaining -= comp
        classes.append(frozenset(comp))
    return classes


def subgraph_classes(kind, n, robots):
    """Equivalence classes for an idealized structure of the given kind."""
    return reachability_classes(shape_adjacency(kind, n), n, robots)


def class_of(classes, arr):
    for cls in classes:
        if arr in cls:
            return cls
    raise ValueError(f"arrangement {arr!r} not in any class")


def class_enter(classes_after, cls, robot, at):
    """The set-level entry operator applied directly to a class.

    classes_after must be the classes of the robot set including the
    entrant.  Returns the set of classes containing some a + (at, robot)
    with a in cls and `at` free in a.
    """
    results = set()
    for a in cls:
        if all(v != at for v, _ in a):
            results.add(class_of(classes_after, a | {(at, robot)}))
    return results


def class_exit(classes_after, cls, robot, via):
    """The set-level removal operator: classes of a - (via, robot) over
    all a in cls that place the robot on `via`."""
    results = set()
    for a in cls:
        if (via, robot) in a:
            results.add(class_of(classes_after, a - {(via, robot)}))
    return results


# ---------------------------------------------------------------------------
# abstract-space enumeration


def _partition_adjacency(rm, sub_vertices):
    """Local adjacency of one subgraph of an actual map (symmetric
    induced edges only), with vertices relabeled to local indices."""
    index = {v: i for i, v in enumerate(sub_vertices)}
    adj = {i: set() for i in range(len(sub_vertices))}
    for v in sub_vertices:
        for w in rm.neighbors_out(v):
            if w in index and rm.has_symmetric_edge(v, w):
                adj[index[v]].add(index[w])
    return adj


def _distributions(subs_capacity, robots):
    """All ways to assign each robot to a subgraph within capacities."""
    m = len(subs_capacity)
    if not robots:
        yield ()
        return

    def rec(i, counts, acc):
        if i == len(robots):
            yield tuple(acc)
            return
        for s in range(m):
            if counts[s] < subs_capacity[s]:
                counts[s] += 1
                acc.append(s)
                yield from rec(i + 1, counts, acc)
                acc.pop()
                counts[s] -= 1

    yield from rec(0, [0] * m, [])


def abstract_enumerate(rm, partition, robots, max_states=200_000):
    """Counts of abstract states and transitions by direct enumeration.

    A state assigns each robot a subgraph and picks one reachability
    class per subgraph.  A transition is a triple (state, crossing move,
    state'): a robot exits its subgraph over a crossing edge and enters
    the neighbouring one, with one successor state per resulting class.
    """
    robots = sorted(robots)
    subs = [list(s.vertices) for s in partition.subgraphs]
    local_adj = [_partition_adjacency(rm, vs) for vs in subs]
    vertex_loc = {}
    for sid, vs in enumerate(subs):
        for i, v in enumerate(vs):
            vertex_loc[v] = (sid, i)

    # crossing edges, directional
    crossing = []
    for u, v, directed in rm.edges:
        su, sv = vertex_loc[u][0], vertex_loc[v][0]
        if su != sv:
            crossing.append((u, v))
            if not directed:
                crossing.append((v, u))

    class_cache = {}

    def classes(sid, robot_set):
        key = (sid, frozenset(robot_set))
        if key not in class_cache:
            class_cache[key] = reachability_classes(
                local_adj[sid], len(subs[sid]), robot_set
            )
        return class_cache[key]

    # enumerate states
    states = []
    for dist in _distributions([len(vs) for vs in subs], robots):
        per_sub = [frozenset(r for r, s in zip(robots, dist) if s == sid)
                   for sid in range(len(subs))]
        choices = [classes(sid, per_sub[sid]) for sid in range(len(subs))]
        stack = [()]
        for opts in choices:
            stack = [pre + (cls,) for pre in stack for cls in opts]
            if len(stack) > max_states:
                raise OracleGuard("abstract_enumerate state guard exceeded")
        states.extend(stack)
        if len(states) > max_states:
            raise OracleGuard("abstract_enumerate state guard exceeded")

    n_transitions = 0
    for state in states:
        for u, v in crossing:
            su, iu = vertex_loc[u]
            sv, iv = vertex_loc[v]
            for r in robots:
                src_cls = state[su]
                if not any(rr == r for _, rr in next(iter(src_cls))):
                    continue
                src_robots = frozenset(rr for _, rr in next(iter(src_cls)))
                exits = class_exit(classes(su, src_robots - {r}), src_cls, r, iu)
                if not exits:
                    continue
                dst_cls = state[sv]
                dst_robots = frozenset(rr for _, rr in next(iter(dst_cls))) if dst_cls else frozenset()
                enters = class_enter(classes(sv, dst_robots | {r}), dst_cls, r, iv)
                n_transitions += len(exits) * len(enters)
    return len(states), n_transitions
