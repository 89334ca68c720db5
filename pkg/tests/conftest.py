from itertools import combinations

import pytest
from hypothesis import strategies as st

from berge.generators import random_connected
from berge.hypergraph import Hypergraph


def hg(n, edges):
    return Hypergraph.from_edges(n, edges)


def complete(vertices, r):
    return [set(c) for c in combinations(vertices, r)]


@pytest.fixture
def k4_3():
    return hg(4, combinations(range(4), 3))


@pytest.fixture
def triangle():
    return hg(3, [{0, 1}, {1, 2}, {0, 2}])


@pytest.fixture
def triangle_pendant():
    return hg(4, [{0, 1}, {1, 2}, {0, 2}, {0, 3}])


@pytest.fixture
def glued_k4s():
    """Two K_4^(3) sharing vertex 3."""
    return hg(7, complete(range(4), 3) + complete(range(3, 7), 3))


@st.composite
def connected_instances(draw, rs=(2, 3, 4), max_n=8, surplus=(0, 1, 2, 3)):
    """Random connected r-uniform hypergraph with e >= n, plus a start vertex."""
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(min_value=r + 1, max_value=max_n))
    from math import comb

    m = min(n + draw(st.sampled_from(surplus)), comb(n, r))
    if m < n:
        m = n
    seed = draw(st.integers(min_value=0, max_value=2**32))
    h = random_connected(r, n, m, seed)
    v = draw(st.integers(min_value=0, max_value=n - 1))
    return h, v
