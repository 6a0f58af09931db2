""" """

from pathlib import Path

import pytest
import yaml

from dyerkit.dyg import load
from dyerkit.graph import INFINITY, validate_dyer

from tests.helpers import edge, triangle

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def expected():
    with open(FIXTURES / "expected.yml", "r") as file:
        return yaml.safe_load(file)


@pytest.fixture
def final_figure():
    return load(FIXTURES / "final_figure.dyg").graph


@pytest.fixture
def s3():
    return edge(3)


@pytest.fixture
def klein():
    return edge(2)


@pytest.fixture
def infinite_dihedral():
    return validate_dyer({"a": 2, "b": 2}, [])


@pytest.fixture
def h3():
    return triangle(5, 3, 2)


@pytest.fixture
def b3():
    return triangle(4, 3, 2)


@pytest.fixture
def a3():
    return triangle(3, 3, 2)


@pytest.fixture
def affine_a2():
    return triangle(3, 3, 3)


@pytest.fixture
def square():
    """chordless 4-cycle a-b-c-d of involutions, all labels 2"""
    vertices = {v: 2 for v in "abcd"}
    return validate_dyer(vertices, [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)])


@pytest.fixture
def free_infinite_pair():
    return validate_dyer({"a": INFINITY, "b": INFINITY}, [])
