from itertools import combinations

import pytest

from subgraphplan import oracle
from subgraphplan.plans import Arrangement, validate_plan
from subgraphplan.roadmap import RoadMap, singleton_partition


def test_two_robot_swap_on_path_unsolvable():
    rm = RoadMap(2, [(0, 1, False)])
    start = Arrangement({0: 1, 1: 2})
    goal = Arrangement({0: 2, 1: 1})
    assert oracle.composite_solve(rm, start, goal) is None


def test_composite_solve_returns_valid_shortest(fig6):
    rm, _, start, goal = fig6
    plan = oracle.composite_solve(rm, start, goal)
    assert plan is not None
    assert validate_plan(rm, start, goal, plan) is None


def test_composite_solve_guard():
    rm = RoadMap(13, [(i, i + 1, False) for i in range(12)])
    with pytest.raises(oracle.OracleGuard):
        oracle.composite_solve(rm, Arrangement({0: 1}), Arrangement({1: 1}))


def test_composite_enumerate_fig1(fig1):
    rm, _, _, _ = fig1
    assert oracle.composite_enumerate(rm, 3) == (4896, 12240)


def test_stack_compression_counts():
    total_arrangements = 0
    total_classes = 0
    for k in range(0, 4):
        for robots in combinations(range(3), k):
            classes = oracle.subgraph_classes("stack", 6, robots)
            total_arrangements += sum(len(c) for c in classes)
            total_classes += len(classes)
    assert total_arrangements == 229
    assert total_classes == 16


def test_clique_classes():
    # any proper occupancy of a clique is one freely-rearrangeable class
    classes = oracle.subgraph_classes("clique", 4, (0, 1, 2))
    assert len(classes) == 1
    # a full clique is frozen: every placement is its own class
    classes = oracle.subgraph_classes("clique", 4, (0, 1, 2, 3))
    assert len(classes) == 24
    assert all(len(c) == 1 for c in classes)


def test_ring_classes_are_rotations():
    classes = oracle.subgraph_classes("ring", 5, (0, 1, 2))
    # k! / rotations: 3 robots on a 5-ring keep cyclic order, so the
    # 60 arrangements fall into (3-1)! = 2 order classes
    assert len(classes) == 2


def test_abstract_enumerate_fig1(fig1):
    rm, part, _, _ = fig1
    assert oracle.abstract_enumerate(rm, part, [0, 1, 2]) == (60, 144)


def test_abstract_enumerate_no_robots(fig1):
    rm, part, _, _ = fig1
    assert oracle.abstract_enumerate(rm, part, []) == (1, 0)


def test_abstract_enumerate_singletons_matches_composite():
    rm = RoadMap(4, [(0, 1, False), (1, 2, False), (2, 3, False), (3, 0, False)])
    part = singleton_partition(rm)
    states, transitions = oracle.abstract_enumerate(rm, part, [0, 1])
    comp_states, comp_edges = oracle.composite_enumerate(rm, 2)
    assert states == comp_states
    # abstract transitions are directed, composite edges undirected
    assert transitions == 2 * comp_edges


def test_single_stack_abstract_states():
    from subgraphplan.roadmap import Partition, SubgraphRef

    rm = RoadMap(6, [(i, i + 1, False) for i in range(5)])
    part = Partition((SubgraphRef(0, "stack", tuple(range(6))),))
    states, _ = oracle.abstract_enumerate(rm, part, [0, 1, 2])
    # a configuration tuple places every robot, so with a single stack
    # the states are exactly the 3! orderings; the famous 16 counts
    # stack configurations over all robot subsets (see the compression
    # test above)
    assert states == 6
