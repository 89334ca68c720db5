import itertools

import pytest
from conftest import complete, connected_instances, hg
from hypothesis import given, settings
from hypothesis import strategies as st
from naive import brute_shortest_between, naive_components, naive_cut_vertices

from berge.certificates import verify_path
from berge.generators import glued_blocks, random_connected
from berge.hypergraph import (
    Hypergraph,
    PreconditionError,
    WorkingHypergraph,
    components,
    connecting_berge_path,
    cut_vertices,
    delete_vertex,
    link_is_bridge,
    split_at_cut_vertex,
)


def W(h):
    return WorkingHypergraph.from_hypergraph(h)


class TestHypergraph:
    def test_rejects_repeated_edge(self):
        with pytest.raises(PreconditionError, match="not simple"):
            hg(3, [{0, 1}, {1, 0}])

    def test_rejects_out_of_range(self):
        with pytest.raises(PreconditionError):
            hg(2, [{0, 2}])

    def test_uniformity_witness(self, k4_3):
        assert k4_3.r == 3
        assert hg(4, [{0, 1}, {1, 2, 3}]).r is None

    def test_canonical_sorts_edges(self):
        h = hg(4, [{2, 3}, {0, 1}, {1, 2}])
        assert [sorted(e) for e in h.canonical().edges] == [[0, 1], [1, 2], [2, 3]]


class TestComponents:
    def test_two_triangles(self):
        h = hg(6, [{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}])
        parts = components(W(h))
        assert [p.vertices for p in parts] == [{0, 1, 2}, {3, 4, 5}]
        assert [sorted(p.edges) for p in parts] == [[0, 1, 2], [3, 4, 5]]

    def test_isolated_vertex(self):
        parts = components(W(hg(4, [{0, 1, 2}])))
        assert [p.n for p in parts] == [3, 1]
        assert parts[1].m == 0

    def test_complete_is_connected(self, k4_3):
        assert len(components(W(k4_3))) == 1

    def test_empty(self):
        assert components(W(hg(0, []))) == []

    @given(connected_instances())
    def test_partition_matches_naive(self, inst):
        h, v = inst
        w = W(h)
        # knock out a vertex so the result is usually disconnected
        e = min(w.incidence[v])
        w = delete_vertex(w, v, e)
        parts = components(w)
        assert [p.vertices for p in parts] == naive_components(w.vertices, list(w.edges.values()))
        assert set().union(*(p.edges for p in parts)) == set(w.edges)
        for p in parts:
            for s in p.edges.values():
                assert s <= p.vertices


class TestDeleteVertex:
    def test_k4(self, k4_3):
        out = delete_vertex(W(k4_3), 0, 0)
        assert out.vertices == {1, 2, 3}
        assert {i: sorted(s) for i, s in out.edges.items()} == {1: [1, 3], 2: [2, 3], 3: [1, 2, 3]}
        assert out.origin == {1: 1, 2: 2, 3: 3}

    def test_two_edges(self):
        out = delete_vertex(W(hg(5, [{0, 1, 2}, {0, 3, 4}])), 0, 0)
        assert list(out.edges.values()) == [{3, 4}]
        assert [p.vertices for p in components(out)] == [{1}, {2}, {3, 4}]

    def test_rejects_bad_edge(self, k4_3):
        with pytest.raises(PreconditionError):
            delete_vertex(W(k4_3), 0, 3)
        with pytest.raises(PreconditionError):
            delete_vertex(W(k4_3), 9, 0)

    def test_simplicity_exhaustive_r3_n5(self):
        triples = list(itertools.combinations(range(5), 3))
        for mask in range(1, 1 << 10):
            h = hg(5, [t for i, t in enumerate(triples) if mask >> i & 1])
            w = W(h)
            for v in range(5):
                for e in sorted(w.incidence[v]):
                    out = delete_vertex(w, v, e)
                    sets = list(out.edges.values())
                    assert len(set(sets)) == len(sets)


class TestCutVertices:
    def test_bowtie(self):
        h = hg(5, [{0, 1}, {1, 4}, {0, 4}, {2, 3}, {3, 4}, {2, 4}])
        assert cut_vertices(W(h)) == {4}

    def test_complete_has_none(self, k4_3):
        assert cut_vertices(W(k4_3)) == set()

    def test_glued_k4s(self, glued_k4s):
        expected = naive_cut_vertices(range(7), list(glued_k4s.edges))
        assert expected == {3}
        assert cut_vertices(W(glued_k4s)) == expected

    def test_rejects_disconnected(self):
        with pytest.raises(PreconditionError, match="not connected"):
            cut_vertices(W(hg(4, [{0, 1}, {2, 3}])))

    @given(connected_instances(surplus=(0, 1, 3, 6)))
    def test_matches_naive(self, inst):
        h, _ = inst
        assert cut_vertices(W(h)) == naive_cut_vertices(range(h.n), list(h.edges))

    @pytest.mark.parametrize("blocks", [1, 2, 3, 5])
    def test_glued_chain(self, blocks):
        h = glued_blocks(3, 4, blocks)
        assert cut_vertices(W(h)) == {3 * i for i in range(1, blocks)}


class TestSplit:
    def test_bowtie(self):
        h = hg(5, [{0, 1}, {1, 4}, {0, 4}, {2, 3}, {3, 4}, {2, 4}])
        pieces = split_at_cut_vertex(W(h), 4)
        assert [p.vertices for p in pieces] == [{0, 1, 4}, {2, 3, 4}]
        assert [sorted(p.edges) for p in pieces] == [[0, 1, 2], [3, 4, 5]]

    def test_glued_k4s(self, glued_k4s):
        pieces = split_at_cut_vertex(W(glued_k4s), 3)
        assert [p.vertices for p in pieces] == [{0, 1, 2, 3}, {3, 4, 5, 6}]
        assert all(len(p.edges) == 4 for p in pieces)

    def test_rejects_non_cut(self, k4_3):
        with pytest.raises(PreconditionError, match="not a cut vertex"):
            split_at_cut_vertex(W(k4_3), 0)

    @settings(max_examples=60)
    @given(st.integers(2, 4), st.integers(0, 2), st.integers(0, 2**32))
    def test_identities_on_glued_random(self, r, extra, seed):
        # two random connected pieces glued at one vertex
        n = r + 2 + extra
        a = random_connected(r, n, n, seed)
        b = random_connected(r, n, n + 1, seed + 1)
        edges = list(a.edges) + [frozenset(x + n - 1 for x in e) for e in b.edges]
        h = Hypergraph.from_edges(2 * n - 1, edges)
        w = W(h)
        for v0 in sorted(cut_vertices(w)):
            pieces = split_at_cut_vertex(w, v0)
            assert sum(p.m for p in pieces) == h.m
            assert sum(p.n - 1 for p in pieces) == h.n - 1
            for p in pieces:
                # cut vertices of a piece: the parent's, minus v0
                assert cut_vertices(p) == (cut_vertices(w) & p.vertices) - {v0}


class TestConnectingPath:
    def test_triangle(self, triangle):
        p = connecting_berge_path(W(triangle), 0, 2)
        assert p.length == 1 and p.edge_ids == (2,)

    def test_path_graph(self):
        h = hg(4, [{0, 1}, {1, 2}, {2, 3}])
        assert connecting_berge_path(W(h), 0, 3).length == 3

    def test_across_glued_blocks(self, glued_k4s):
        edges = dict(enumerate(glued_k4s.edges))
        p = connecting_berge_path(W(glued_k4s), 0, 6)
        assert brute_shortest_between(edges, 7, 0, 6) == 2
        assert p.length == 2 and 3 in p.vertices
        assert verify_path(glued_k4s, p)

    def test_rejects(self, triangle):
        with pytest.raises(PreconditionError):
            connecting_berge_path(W(triangle), 0, 0)
        with pytest.raises(PreconditionError):
            connecting_berge_path(W(triangle), 0, 5)

    @settings(max_examples=40)
    @given(connected_instances(max_n=6), st.integers(0, 5))
    def test_shortest(self, inst, b):
        h, a = inst
        b %= h.n
        if a == b:
            return
        p = connecting_berge_path(W(h), a, b)
        assert verify_path(h, p)
        assert p.vertices[0] == a and p.vertices[-1] == b
        assert p.length == brute_shortest_between(dict(enumerate(h.edges)), h.n, a, b)


@given(connected_instances(rs=(3, 4), surplus=(0, 2, 5)))
def test_link_is_bridge_matches_components(inst):
    h, _ = inst
    w = W(h)
    for f, s in w.edges.items():
        for u in s:
            sets = [t if i != f else t - {u} for i, t in w.edges.items()]
            expected = len(naive_components(w.vertices, sets)) > 1
            assert link_is_bridge(w, u, f) == expected


def test_working_invariants_hold_on_root(glued_k4s):
    W(glued_k4s).check_invariants()


def test_invariant_check_catches_collision(k4_3):
    w = W(k4_3)
    w.replace_edge(0, frozenset({1, 2}))
    w.replace_edge(3, frozenset({1, 2}))
    with pytest.raises(AssertionError, match="coincide"):
        w.check_invariants()


def test_complete_helper():
    assert len(complete(range(5), 3)) == 10
