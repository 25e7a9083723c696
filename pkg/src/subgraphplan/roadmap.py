"""Road-map graphs, induced-subgraph partitions and the reduced graph.

The map is an undirected-by-default graph with optional directed edges and
optional 2D display coordinates.  Partitions tag disjoint induced subgraphs
as stack / hall / clique / ring / singleton; the reduced graph contracts
each subgraph to a node and remembers which concrete edges cross between
subgraphs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

STACK = "stack"
HALL = "hall"
CLIQUE = "clique"
RING = "ring"
SINGLETON = "singleton"
KINDS = (STACK, HALL, CLIQUE, RING, SINGLETON)


class MapError(ValueError):
    """Raised for malformed map or partition input."""


class RoadMap:
    """A graph with dense integer vertex ids 0..n-1.

    Undirected edges are stored once and queried symmetrically.  Directed
    edges are traversable in one direction only.
    """

    def __init__(self, n_vertices, edges, coords=None):
        if n_vertices < 0:
            raise MapError("negative vertex count")
        self.n = n_vertices
        self.coords = dict(coords) if coords else {}
        self._out = {v: [] for v in range(n_vertices)}
        self._edges = []  # (u, v, directed); undirected stored once
        seen = set()
        for idx, (u, v, directed) in enumerate(edges):
            if u == v:
                raise MapError(f"edge {idx}: self-loop at vertex {u}")
            for w in (u, v):
                if not (0 <= w < n_vertices):
                    raise MapError(f"edge {idx}: dangling vertex id {w}")
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen or (not directed and (v, u) in seen):
                raise MapError(f"edge {idx}: duplicate edge ({u}, {v})")
            seen.add(key)
            self._edges.append((u, v, directed))
            self._out[u].append(v)
            if not directed:
                self._out[v].append(u)
        for v in self._out:
            self._out[v].sort()

    @property
    def vertices(self):
        return range(self.n)

    @property
    def edges(self):
        """List of (u, v, directed) with undirected edges listed once."""
        return list(self._edges)

    def n_edges(self):
        return len(self._edges)

    def neighbors_out(self, v):
        """Vertices reachable from v in one step, ascending."""
        return self._out[v]

    def has_edge(self, u, v):
        """True iff a robot may move from u to v in one step."""
        return v in self._out[u]

    def has_symmetric_edge(self, u, v):
        return v in self._out[u] and u in self._out[v]

    def average_degree(self):
        """|E| / |V| (the convention used throughout this project)."""
        return len(self._edges) / self.n if self.n else 0.0

    def is_connected(self):
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        # treat directed edges as connections in either direction
        undirected = {v: set() for v in range(self.n)}
        for u, v, _ in self._edges:
            undirected[u].add(v)
            undirected[v].add(u)
        while stack:
            u = stack.pop()
            for w in undirected[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_json(self):
        verts = []
        for v in range(self.n):
            entry = {"id": v}
            if v in self.coords:
                entry["x"], entry["y"] = self.coords[v]
            verts.append(entry)
        edges = []
        for u, v, directed in self._edges:
            e = {"from": u, "to": v}
            if directed:
                e["directed"] = True
            edges.append(e)
        return {"vertices": verts, "edges": edges}


def map_from_json(data):
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise MapError("map JSON must have 'vertices' and 'edges'")
    ids = [v["id"] for v in data["vertices"]]
    if sorted(ids) != list(range(len(ids))):
        raise MapError("vertex ids must be unique and contiguous from 0")
    coords = {}
    for v in data["vertices"]:
        if "x" in v and "y" in v:
            coords[v["id"]] = (float(v["x"]), float(v["y"]))
    edges = [(e["from"], e["to"], bool(e.get("directed", False))) for e in data["edges"]]
    return RoadMap(len(ids), edges, coords)


def load_map(path):
    """Load and validate a map JSON file."""
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise MapError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return map_from_json(data)
    except MapError as exc:
        raise MapError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class SubgraphRef:
    """One tagged induced subgraph of a partition.

    Vertex order is canonical: stacks head-first, halls from the end with
    the smallest vertex id, rings rotated/reflected so the smallest id is
    first and its smaller neighbor second.
    """

    id: int
    kind: str
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def size(self):
        return len(self.vertices)

    def member_set(self):
        return frozenset(self.vertices)


def _chain_order(rm, members):
    """Order a vertex set as a path using symmetric induced edges.

    Returns the ordered list or None if the set is not a chain.
    """
    members = set(members)
    if len(members) == 1:
        return list(members)
    adj = {v: [w for w in members if w != v and rm.has_symmetric_edge(v, w)] for v in members}
    ends = [v for v in members if len(adj[v]) == 1]
    if len(ends) != 2 or any(len(adj[v]) != 2 for v in members if v not in ends):
        return None
    start = min(ends)
    order = [start]
    prev = None
    cur = start
    while len(order) < len(members):
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            return None
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _cycle_order(rm, members):
    """Order a vertex set as a simple cycle; None if it is not one."""
    members = set(members)
    if len(members) < 3:
        return None
    adj = {v: sorted(w for w in members if w != v and rm.has_symmetric_edge(v, w)) for v in members}
    if any(len(adj[v]) != 2 for v in members):
        return None
    start = min(members)
    second = min(adj[start])
    order = [start, second]
    prev, cur = start, second
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            return None
        prev, cur = cur, nxt[0]
        if cur == start:
            break
        order.append(cur)
    if len(order) != len(members):
        return None
    return order


def _external_neighbors(rm, v, members):
    out = set()
    for u, w, _ in rm.edges:
        if u == v and w not in members:
            out.add(w)
        if w == v and u not in members:
            out.add(u)
    return out


def check_structure(rm, kind, members):
    """Check that a vertex set induces the declared structure.

    Returns (canonical_vertex_order, None) on success, (None, reason) on
    failure.
    """
    members = list(members)
    mset = set(members)
    if len(mset) != len(members):
        return None, "repeated vertex"
    if any(not (0 <= v < rm.n) for v in members):
        return None, "vertex id out of range"
    if not members:
        return None, "empty subgraph"

    # count induced symmetric edges; any directed internal edge is illegal
    internal = []
    for u, v, directed in rm.edges:
        if u in mset and v in mset:
            if directed:
                return None, f"directed edge ({u},{v}) inside a structured subgraph"
            internal.append((u, v))

    if kind == SINGLETON:
        if len(members) != 1:
            return None, "singleton must have exactly one vertex"
        return tuple(members), None

    if kind in (STACK, HALL):
        order = _chain_order(rm, mset) if len(mset) > 1 else list(mset)
        if order is None:
            return None, f"{kind} vertices do not form a chain"
        if len(internal) != len(members) - 1:
            return None, f"{kind} has extra internal edges"
        if kind == STACK:
            # external edges are allowed only at the head
            touched = [v for v in order if _external_neighbors(rm, v, mset)]
            if len(order) == 1:
                return tuple(order), None
            ends = (order[0], order[-1])
            if any(v not in ends for v in touched):
                return None, "stack has external edges away from its ends"
            if touched and all(v == order[-1] for v in touched):
                order = order[::-1]
            elif any(v == order[-1] for v in touched) and any(v == order[0] for v in touched):
                return None, "stack has external edges at both ends"
        return tuple(order), None

    if kind == CLIQUE:
        for u in members:
            for v in members:
                if u < v and not rm.has_symmetric_edge(u, v):
                    return None, f"clique vertices {u} and {v} not connected"
        return tuple(sorted(members)), None

    if kind == RING:
        order = _cycle_order(rm, mset)
        if order is None:
            return None, "ring vertices do not form a simple cycle"
        if len(internal) != len(members):
            return None, "ring has chord edges"
        return tuple(order), None

    return None, f"unknown kind {kind!r}"


@dataclass(frozen=True)
class Partition:
    subgraphs: tuple
    vertex_to_subgraph: dict = field(hash=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "subgraphs", tuple(self.subgraphs))
        v2s = {}
        for s in self.subgraphs:
            for v in s.vertices:
                v2s[v] = s.id
        object.__setattr__(self, "vertex_to_subgraph", v2s)

    def subgraph_of(self, v):
        return self.vertex_to_subgraph[v]

    def __getitem__(self, sid):
        return self.subgraphs[sid]

    def to_json(self):
        return {
            "subgraphs": [
                {"kind": s.kind, "vertices": list(s.vertices)} for s in self.subgraphs
            ]
        }


def partition_from_json(rm, data):
    """Build a Partition from JSON, canonicalizing vertex orders."""
    subs = []
    for i, entry in enumerate(data["subgraphs"]):
        kind = entry["kind"]
        if kind not in KINDS:
            raise MapError(f"subgraph {i}: unknown kind {kind!r}")
        order, reason = check_structure(rm, kind, entry["vertices"])
        if order is None:
            raise MapError(f"subgraph {i}: {reason}")
        subs.append(SubgraphRef(i, kind, order))
    return Partition(tuple(subs))


def load_partition(rm, path):
    with open(path) as f:
        data = json.load(f)
    return partition_from_json(rm, data)


def singleton_partition(rm):
    """The identity partition: every vertex its own singleton."""
    return Partition(tuple(SubgraphRef(v, SINGLETON, (v,)) for v in rm.vertices))


def validate_partition(rm, partition):
    """Return a list of violation strings; empty iff the partition is valid."""
    violations = []
    seen = {}
    for s in partition.subgraphs:
        for v in s.vertices:
            if v in seen:
                violations.append(f"vertex {v} in both subgraph {seen[v]} and {s.id}")
            seen[v] = s.id
    missing = [v for v in rm.vertices if v not in seen]
    if missing:
        violations.append(f"vertices not covered: {missing}")
    for s in partition.subgraphs:
        order, reason = check_structure(rm, s.kind, s.vertices)
        if order is None:
            violations.append(f"subgraph {s.id} ({s.kind}): {reason}")
        elif tuple(order) != tuple(s.vertices):
            violations.append(
                f"subgraph {s.id} ({s.kind}): vertices not in canonical order"
            )
    return violations


@dataclass(frozen=True)
class ReducedGraph:
    """The partition's quotient graph.

    ``connecting_edges[(x, y)]`` lists concrete edges (u, v) traversable
    from subgraph x into subgraph y; node pairs are directional so that
    directed crossing edges are represented faithfully.
    """

    nodes: tuple
    edges: frozenset
    connecting_edges: dict = field(hash=False, compare=False)

    def neighbors(self, sid):
        return sorted(y for (x, y) in self.edges if x == sid)

    def n_undirected_edges(self):
        """Count of reduced-graph adjacencies ignoring direction."""
        return len({frozenset(e) for e in self.edges})

    def average_degree(self):
        return self.n_undirected_edges() / len(self.nodes) if self.nodes else 0.0


def reduce_graph(rm, partition):
    """Contract each subgraph to a node; collect crossing edges."""
    violations = validate_partition(rm, partition)
    if violations:
        raise MapError("invalid partition: " + "; ".join(violations))
    connecting = {}
    for u, v, directed in rm.edges:
        su, sv = partition.subgraph_of(u), partition.subgraph_of(v)
        if su == sv:
            continue
        connecting.setdefault((su, sv), []).append((u, v))
        if not directed:
            connecting.setdefault((sv, su), []).append((v, u))
    for key in connecting:
        connecting[key].sort()
    return ReducedGraph(
        nodes=tuple(s.id for s in partition.subgraphs),
        edges=frozenset(connecting),
        connecting_edges=connecting,
    )


def count_composite_space(n, k, e):
    """Exact state and transition counts of the collision-free composite
    graph for k robots on an n-vertex, e-edge undirected map."""
    if k > n or k < 0:
        raise ValueError(f"robot count {k} out of range for {n} vertices")
    states = math.perm(n, k)
    transitions = k * e * math.perm(n - 2, k - 1) if k >= 1 else 0
    return states, transitions
