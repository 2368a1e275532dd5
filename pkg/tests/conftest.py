import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tsep.graph import CondContext, Graph, parse_edge_list
from tsep.relation import Relation, VertexSet

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exhaustive runs, enabled with TSEP_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("TSEP_SLOW"):
        return
    skip = pytest.mark.skip(reason="set TSEP_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


CHAIN = "a -> m\nm -> c\n"
COLLIDER = "a -> w\nc -> w\n"
FORK = "z -> a\nz -> c\n"


@pytest.fixture
def chain() -> Graph:
    return parse_edge_list(CHAIN)


@pytest.fixture
def collider() -> Graph:
    return parse_edge_list(COLLIDER)


@pytest.fixture
def fork() -> Graph:
    return parse_edge_list(FORK)


def ctx(g: Graph, *w: str) -> CondContext:
    return CondContext.of(g, w)


@st.composite
def relations(draw, n=None, max_n=6):
    if n is None:
        n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    return Relation(n, rows)


@st.composite
def vertex_sets(draw, n):
    return VertexSet(n, draw(st.integers(0, (1 << n) - 1)))


@st.composite
def contexts(draw, max_n=7):
    r = draw(relations(max_n=max_n))
    g = Graph(tuple(f"v{i}" for i in range(r.n)), r)
    return CondContext(g, draw(vertex_sets(r.n)))
