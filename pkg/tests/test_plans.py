import random
from itertools import combinations

import pytest

from subgraphplan.plans import (
    Arrangement,
    ArrangementError,
    PlanStep,
    apply_step,
    combine,
    induce,
    is_applicable,
    plan_from_json,
    plan_to_json,
    validate_plan,
)
from subgraphplan.roadmap import RoadMap, SubgraphRef


@pytest.fixture
def path3():
    return RoadMap(3, [(0, 1, False), (1, 2, False)])


def test_is_applicable(path3):
    a = Arrangement({0: 1})
    assert is_applicable(path3, a, PlanStep(1, 0, 1))
    assert not is_applicable(path3, Arrangement({0: 1, 1: 2}), PlanStep(1, 0, 1))
    assert not is_applicable(path3, a, PlanStep(2, 0, 1))
    assert not is_applicable(path3, a, PlanStep(1, 0, 2))  # no edge


def test_apply_step(path3):
    a = Arrangement({0: 1})
    b = apply_step(path3, a, PlanStep(1, 0, 1))
    assert b == Arrangement({1: 1})
    back = apply_step(path3, b, PlanStep(1, 1, 0))
    assert back == a


def test_apply_inapplicable_raises(path3):
    with pytest.raises(ArrangementError):
        apply_step(path3, Arrangement({0: 1, 1: 2}), PlanStep(1, 0, 1))


def test_injectivity_enforced():
    with pytest.raises(ArrangementError):
        Arrangement({0: 1, 1: 1})


def test_validate_empty_plan(path3):
    a = Arrangement({0: 1})
    assert validate_plan(path3, a, a, []) is None


def test_validate_flags_occupied_destination(path3):
    a = Arrangement({0: 1, 2: 2})
    steps = [PlanStep(1, 0, 1), PlanStep(2, 2, 1)]
    violation = validate_plan(path3, a, a, steps)
    assert violation is not None
    assert violation.index == 1
    assert "occupied" in violation.reason


def test_validate_flags_wrong_final(path3):
    a = Arrangement({0: 1})
    violation = validate_plan(path3, a, a, [PlanStep(1, 0, 1)])
    assert violation.index == 1
    assert "differs" in violation.reason


def test_induce_combine_roundtrip():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 10)
        k = rng.randint(0, n)
        verts = rng.sample(range(n), k)
        arr = Arrangement({v: i for i, v in enumerate(verts)})
        cut = rng.randint(0, n)
        subs = [
            SubgraphRef(0, "hall", tuple(range(cut))),
            SubgraphRef(1, "hall", tuple(range(cut, n))),
        ]
        parts = [induce(arr, s) for s in subs if s.vertices]
        assert combine(parts) == arr


def test_induce_empty():
    arr = Arrangement({0: 1})
    sub = SubgraphRef(0, "hall", (2, 3))
    assert len(induce(arr, sub)) == 0


def test_combine_overlap_raises():
    with pytest.raises(ArrangementError):
        combine([Arrangement({0: 1}), Arrangement({0: 2})])
    with pytest.raises(ArrangementError):
        combine([Arrangement({0: 1}), Arrangement({1: 1})])


def test_concatenation_validates(path3):
    a = Arrangement({0: 1})
    p = [PlanStep(1, 0, 1)]
    q = [PlanStep(1, 1, 2)]
    c = apply_step(path3, a, p[0])
    b = apply_step(path3, c, q[0])
    assert validate_plan(path3, a, c, p) is None
    assert validate_plan(path3, c, b, q) is None
    assert validate_plan(path3, a, b, p + q) is None


def test_all_interleavings_validate():
    # two disjoint 3-step plans on disjoint halves of a map
    rm = RoadMap(8, [(i, i + 1, False) for i in range(3)] + [(i, i + 1, False) for i in range(4, 7)])
    start = Arrangement({0: 1, 4: 2})
    p = [PlanStep(1, 0, 1), PlanStep(1, 1, 2), PlanStep(1, 2, 3)]
    q = [PlanStep(2, 4, 5), PlanStep(2, 5, 6), PlanStep(2, 6, 7)]
    goal = Arrangement({3: 1, 7: 2})
    for positions in combinations(range(6), 3):
        merged = []
        pi = iter(p)
        qi = iter(q)
        for i in range(6):
            merged.append(next(pi) if i in positions else next(qi))
        assert validate_plan(rm, start, goal, merged) is None


def test_plan_json_roundtrip():
    steps = [PlanStep(0, 1, 2), PlanStep(3, 2, 1)]
    assert plan_from_json(plan_to_json(steps)) == steps
