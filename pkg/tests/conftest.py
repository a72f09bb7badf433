from pathlib import Path

import pytest

from tetracolor.harness import corpus
from tetracolor.planar_map import parse_map

DATA = Path(__file__).parent / "data"

K4_TEXT = "4\n1: 2 4 3\n2: 3 4 1\n3: 1 4 2\n4: 1 2 3\n"
PRISM_TEXT = "6\n1: 3 2 6\n2: 6 1 4\n3: 1 5 4\n4: 3 5 2\n5: 3 6 4\n6: 2 5 1\n"
FOUR_CYCLE_TEXT = "4\n1: 2 4\n2: 3 1\n3: 4 2\n4: 1 3\n"
CUBE_TEXT = ("8\n1: 2 4 5\n2: 3 1 6\n3: 4 2 7\n4: 1 3 8\n"
             "5: 8 6 1\n6: 5 7 2\n7: 6 8 3\n8: 7 5 4\n")
# the six-vertex three-colored example map: one blue, one yellow, one green
# edge at every vertex, drawn planar
FIG_TEXT = "6\n1: 2 5 3\n2: 1 3 6\n3: 4 2 1\n4: 5 6 3\n5: 4 1 6\n6: 2 4 5\n"


@pytest.fixture(scope="session")
def k4():
    return parse_map(K4_TEXT)


@pytest.fixture(scope="session")
def prism():
    return parse_map(PRISM_TEXT)


@pytest.fixture(scope="session")
def four_cycle():
    return parse_map(FOUR_CYCLE_TEXT)


@pytest.fixture(scope="session")
def cube():
    return parse_map(CUBE_TEXT)


@pytest.fixture(scope="session")
def fig_map():
    return parse_map(FIG_TEXT)


@pytest.fixture(scope="session")
def dodecahedron():
    return parse_map((DATA / "dodecahedron.map").read_text())


@pytest.fixture(scope="session")
def recurrence14():
    return parse_map((DATA / "recurrence14.map").read_text())


@pytest.fixture(scope="session")
def corpus12():
    return corpus(12)


@pytest.fixture(scope="session")
def corpus16():
    return corpus(16)
