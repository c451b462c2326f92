import numpy as np
import pytest

from qwspec.graphs import (
    complete_graph,
    cycle_graph,
    grover_weights,
    path_graph,
    star_graph,
)
from qwspec.operators import build_model


def grover_model(g):
    return build_model(g, grover_weights(g))


@pytest.fixture
def p2():
    return path_graph(2)


@pytest.fixture
def c3():
    return cycle_graph(3)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k13():
    return star_graph(3)


@pytest.fixture
def c3_model(c3):
    return grover_model(c3)


@pytest.fixture
def c4_model(c4):
    return grover_model(c4)


@pytest.fixture
def k4_model(k4):
    return grover_model(k4)


@pytest.fixture
def p2_model(p2):
    return grover_model(p2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
