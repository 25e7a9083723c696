import json
import os

import pytest

from subgraphplan.genbench import problem_from_json
from subgraphplan.roadmap import load_map, load_partition

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def load_fixture_map(name):
    return load_map(fixture_path(name))


def load_fixture_problem(name):
    with open(fixture_path(name)) as f:
        return problem_from_json(json.load(f))


@pytest.fixture
def fig1():
    rm = load_fixture_map("fig1.json")
    part = load_partition(rm, fixture_path("fig1.part.json"))
    start, goal = load_fixture_problem("fig1.problem.json")
    return rm, part, start, goal


@pytest.fixture
def fig6():
    rm = load_fixture_map("fig6.json")
    part = load_partition(rm, fixture_path("fig6.part.json"))
    start, goal = load_fixture_problem("fig6.problem.json")
    return rm, part, start, goal


@pytest.fixture
def fig7():
    rm = load_fixture_map("fig7.json")
    part = load_partition(rm, fixture_path("fig7.part.json"))
    start, goal = load_fixture_problem("fig7.problem.json")
    return rm, part, start, goal
