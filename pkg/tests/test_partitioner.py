import random

from subgraphplan.genbench import gen_graph
from subgraphplan.partitioner import auto_partition, grow, partition_stats
from subgraphplan.roadmap import RoadMap, singleton_partition, validate_partition


def path_graph(n):
    return RoadMap(n, [(i, i + 1, False) for i in range(n - 1)])


def complete_graph(n):
    return RoadMap(n, [(i, j, False) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n):
    return RoadMap(n, [(i, (i + 1) % n, False) for i in range(n)])


def test_path_becomes_one_hall():
    part = auto_partition(path_graph(5), seed=1)
    kinds = sorted(s.kind for s in part.subgraphs)
    assert kinds == ["hall"]
    assert part[0].size() == 5


def test_complete_graph_becomes_clique():
    part = auto_partition(complete_graph(4), seed=1)
    assert [s.kind for s in part.subgraphs] == ["clique"]
    assert part[0].size() == 4


def test_cycle_becomes_ring():
    part = auto_partition(cycle_graph(6), seed=1)
    assert [s.kind for s in part.subgraphs] == ["ring"]
    assert part[0].size() == 6


def test_triangle_grow():
    rm = cycle_graph(3)
    rng = random.Random(0)
    kind, members = grow(rm, set(), (0, 1), "ring", rng)
    assert kind == "ring" and len(members) == 3
    kind, members = grow(rm, set(), (0, 1), "clique", rng)
    assert kind == "clique" and len(members) == 3


def test_star_hall_caps_at_three():
    # leaf-hub-leaf is still a chain; the third leaf cannot join because
    # it would give the hub a third internal edge
    rm = RoadMap(4, [(0, 1, False), (0, 2, False), (0, 3, False)])
    rng = random.Random(0)
    kind, members = grow(rm, set(), (0, 1), "hall", rng)
    assert kind == "hall"
    assert len(members) == 3
    assert 0 in members


def test_ring_that_cannot_close_is_discarded():
    rm = path_graph(4)
    assert grow(rm, set(), (0, 1), "ring", random.Random(0)) is None


def test_auto_partition_valid_on_random_maps():
    rng = random.Random(99)
    for trial in range(150):
        n = rng.randint(10, 60)
        degree = rng.uniform(1.0, 2.8)
        degree = min(degree, (n - 1) / 2)
        rm = gen_graph(n, degree, f"part:{trial}")
        part = auto_partition(rm, seed=trial)
        assert validate_partition(rm, part) == [], trial


def test_auto_partition_deterministic():
    rm = gen_graph(40, 2.0, "det")
    a = auto_partition(rm, seed=7)
    b = auto_partition(rm, seed=7)
    assert a.to_json() == b.to_json()


def test_stats_identity_partition(fig1):
    rm, _, _, _ = fig1
    stats = partition_stats(rm, singleton_partition(rm))
    assert stats["n_subgraphs"] == rm.n
    assert stats["reduced_degree"] == rm.average_degree()


def test_stats_fig1_hand_partition(fig1):
    rm, part, _, _ = fig1
    stats = partition_stats(rm, part)
    assert stats["n_subgraphs"] == 3
    assert stats["reduced_degree"] == 2 / 3


def test_mean_subgraph_size_on_thirty_vertex_maps():
    # loose check of the reported average subgraph size of about four
    total = 0.0
    trials = 60
    for t in range(trials):
        rm = gen_graph(30, 2.0, f"size:{t}")
        part = auto_partition(rm, seed=t)
        total += partition_stats(rm, part)["mean_size"]
    assert 2.5 <= total / trials <= 5.5
