"""Shared fixtures: small reference graphs and cached census classes."""

from fractions import Fraction

import pytest

from graphsolitons import Graph, graph_classes

# Triangle 1-2-3 with a pendant edge 3-4 ("paw"), edges ordered so the edge
# weights come out (1/6, 1/6, 1/3, 1/3).
PAW_EDGES = ((2, 3), (1, 3), (1, 2), (3, 4))
PAW_TEXT = "# triangle 1-2-3 plus pendant 3-4\n4\n2 3\n1 3\n1 2\n3 4\n"


@pytest.fixture
def paw() -> Graph:
    return Graph(p=4, edges=PAW_EDGES)


@pytest.fixture
def k2() -> Graph:
    return Graph(p=2, edges=((1, 2),))


@pytest.fixture
def p3() -> Graph:
    return Graph(p=3, edges=((1, 2), (2, 3)))


@pytest.fixture
def p4() -> Graph:
    return Graph(p=4, edges=((1, 2), (2, 3), (3, 4)))


@pytest.fixture
def k3() -> Graph:
    return Graph(p=3, edges=((1, 2), (1, 3), (2, 3)))


@pytest.fixture(scope="session")
def connected_classes_p5():
    return graph_classes(5)


@pytest.fixture(scope="session")
def connected_classes_p6():
    return graph_classes(6)


def F(num, den=1) -> Fraction:
    return Fraction(num, den)
