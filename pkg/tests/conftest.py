import itertools

import pytest
from hypothesis import settings, strategies as st

from hboot.graph import from_edges

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected and n > 1:
        parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
        chosen = set(chosen) | {(p, v) for v, p in zip(range(1, n), parents)}
    return from_edges(n, chosen)


@st.composite
def supergraph_pairs(draw, max_n=9):
    g = draw(graphs(min_n=2, max_n=max_n))
    pairs = list(itertools.combinations(range(g.n), 2))
    extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=6))
    return g, g.with_edges(extra) if extra else g


@pytest.fixture
def P():
    from hboot.constructions import path

    return lambda n: path(n).graph


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
