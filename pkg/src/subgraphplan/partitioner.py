"""Automatic map partitioning.

Repeatedly picks a random pair of adjacent unused vertices, grows a
hall, a ring and a clique from the pair, keeps the biggest candidate,
and marks its vertices used.  Whatever is left over becomes singletons.
Growth is randomized but fully reproducible from the seed.
"""

from __future__ import annotations

import random

from .roadmap import (
    CLIQUE,
    HALL,
    RING,
    SINGLETON,
    Partition,
    SubgraphRef,
    check_structure,
)


def _sym_neighbors(rm, v):
    return [w for w in rm.neighbors_out(v) if rm.has_symmetric_edge(v, w)]


def _chain_extensions(rm, chain, used, end_vertex):
    """Unused vertices that can extend a chain at one end without
    creating edges to any interior member."""
    members = set(chain)
    out = []
    for w in _sym_neighbors(rm, end_vertex):
        if w in used or w in members:
            continue
        touches = [x for x in members if rm.has_edge(w, x) or rm.has_edge(x, w)]
        if touches == [end_vertex]:
            out.append(w)
    return sorted(out)


def grow(rm, used, seed_pair, kind, rng):
    """Grow one candidate subgraph of the given kind from a seed edge.

    Returns a kind/vertex-list pair, or None if no valid candidate of
    that kind can be built (rings that never close, for instance).
    """
    u, v = seed_pair
    if not rm.has_symmetric_edge(u, v):
        return None

    if kind == HALL:
        chain = [u, v]
        while True:
            options = [
                (0, w) for w in _chain_extensions(rm, chain, used, chain[0])
            ] + [(1, w) for w in _chain_extensions(rm, chain, used, chain[-1])]
            if not options:
                break
            side, w = rng.choice(options)
            if side == 0:
                chain.insert(0, w)
            else:
                chain.append(w)
        return (HALL, chain)

    if kind == RING:
        # like hall growth, except the new vertex may also touch the
        # opposite end: that adjacency is the future closing edge
        def ring_extensions(chain, end_vertex, other_end):
            members = set(chain)
            out = []
            for w in _sym_neighbors(rm, end_vertex):
                if w in used or w in members:
                    continue
                touches = {
                    x for x in members if rm.has_edge(w, x) or rm.has_edge(x, w)
                }
                if touches <= {end_vertex, other_end}:
                    out.append(w)
            return sorted(out)

        chain = [u, v]
        for _ in range(rm.n):
            if len(chain) >= 3 and rm.has_symmetric_edge(chain[-1], chain[0]):
                order, reason = check_structure(rm, RING, chain)
                if reason is None:
                    return (RING, chain)
            options = [
                (0, w) for w in ring_extensions(chain, chain[0], chain[-1])
            ] + [(1, w) for w in ring_extensions(chain, chain[-1], chain[0])]
            if not options:
                return None
            side, w = rng.choice(options)
            if side == 0:
                chain.insert(0, w)
            else:
                chain.append(w)
        return None

    if kind == CLIQUE:
        members = [u, v]
        while True:
            options = sorted(
                w
                for w in rm.vertices
                if w not in used
                and w not in members
                and all(rm.has_symmetric_edge(w, x) for x in members)
            )
            if not options:
                break
            members.append(rng.choice(options))
        return (CLIQUE, members)

    raise ValueError(f"cannot grow kind {kind!r}")


def auto_partition(rm, seed=0):
    """Partition a map into halls, rings, cliques and singletons."""
    rng = random.Random(seed)
    used = set()
    chosen = []  # (kind, vertices)
    while True:
        pairs = sorted(
            (min(a, b), max(a, b))
            for a, b, directed in rm.edges
            if not directed and a not in used and b not in used
        )
        if not pairs:
            break
        pair = rng.choice(pairs)
        candidates = []
        for kind in (HALL, RING, CLIQUE):
            cand = grow(rm, used, pair, kind, rng)
            if cand is not None:
                candidates.append(cand)
        # biggest wins; ties prefer halls, then rings, then cliques
        rank = {HALL: 0, RING: 1, CLIQUE: 2}
        kind, members = max(candidates, key=lambda c: (len(c[1]), -rank[c[0]]))
        chosen.append((kind, members))
        used.update(members)
    for v in rm.vertices:
        if v not in used:
            chosen.append((SINGLETON, [v]))
    subs = []
    for i, (kind, members) in enumerate(chosen):
        order, reason = check_structure(rm, kind, members)
        if order is None:
            raise AssertionError(f"grown {kind} invalid: {reason}")
        subs.append(SubgraphRef(i, kind, order))
    return Partition(tuple(subs))


def partition_stats(rm, partition):
    """Summary statistics used by the experiment CSV output."""
    from .roadmap import reduce_graph

    reduced = reduce_graph(rm, partition)
    by_kind = {}
    sizes = []
    for s in partition.subgraphs:
        by_kind[s.kind] = by_kind.get(s.kind, 0) + 1
        sizes.append(s.size())
    return {
        "n_subgraphs": len(partition.subgraphs),
        "reduced_degree": reduced.average_degree(),
        "mean_size": sum(sizes) / len(sizes) if sizes else 0.0,
        "by_kind": by_kind,
    }
