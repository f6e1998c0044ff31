import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from localdom import kernels
from localdom._jit import python_impl
from localdom.config import AlgorithmConfig
from localdom.cuts import (
    enumerate_cut_sets,
    is_local_1_cut,
    is_r_interesting,
    local_2_cut_vertices,
    local_2_cuts_at,
)
from localdom.gen import clique_pendant
from localdom.graph import Graph, ball, complete_graph, cycle_graph, distances_from, induced_subgraph, path_graph

from conftest import graphs
from test_graph import to_nx


def brute_local_2_cuts(g, v, r):
    """Minimal r-local 2-cuts at v straight from the definition."""
    out = []
    dv = distances_from(g, v)
    for u in range(g.n):
        if u == v or dv[u] < 0 or dv[u] > r:
            continue
        region = (ball(g, u, r) | ball(g, v, r)) - {u, v}
        sub, idx = induced_subgraph(g, region)
        inv = {j: i for i, j in idx.items()}
        comps = [{inv[x] for x in c} for c in nx.connected_components(to_nx(sub))]
        full = [c for c in comps if set(g.adj[u]) & c and set(g.adj[v]) & c]
        if len(full) >= 2:
            out.append(u)
    return out


class TestLocalOneCuts:
    def test_long_cycle(self):
        c = cycle_graph(50)
        rec = is_local_1_cut(c, 17, 5)
        assert rec is not None and rec.members == (17,)
        assert len(rec.attached_components) == 2

    def test_clique(self):
        assert all(is_local_1_cut(complete_graph(5), v, r) is None for v in range(5) for r in (1, 3))

    def test_c6_radius3(self):
        assert is_local_1_cut(cycle_graph(6), 0, 3) is None

    @given(graphs(max_n=10, connected=True), st.integers(1, 4))
    def test_articulation_points_are_local_cuts(self, g, r):
        for v in nx.articulation_points(to_nx(g)):
            assert is_local_1_cut(g, v, r) is not None

    @given(graphs(max_n=10, connected=True))
    def test_global_radius_matches_articulation(self, g):
        arts = set(nx.articulation_points(to_nx(g)))
        assert {v for v in range(g.n) if is_local_1_cut(g, v, g.n)} == arts

    @given(graphs(max_n=9), st.integers(1, 3), st.data())
    def test_depends_only_on_ball(self, g, r, data):
        v = data.draw(st.integers(0, g.n - 1))
        near = ball(g, v, 2 * r)
        far = [w for w in range(g.n) if w not in near]
        extra = Graph(g.n + 2, list(g.edges()) + [(w, g.n) for w in far] + [(g.n, g.n + 1)])
        assert (is_local_1_cut(g, v, r) is None) == (is_local_1_cut(extra, v, r) is None)


class TestLocalTwoCuts:
    def test_c6(self):
        cuts = local_2_cuts_at(cycle_graph(6), 0, 3)
        assert [c.members for c in cuts] == [(0, 2), (0, 3), (0, 4)]
        antipodal = next(c for c in cuts if c.members == (0, 3))
        assert antipodal.attached_components == (frozenset({1, 2}), frozenset({4, 5}))

    def test_k4(self):
        assert all(local_2_cuts_at(complete_graph(4), v, 2) == [] for v in range(4))

    def test_clique_pendant_pairs(self):
        g = clique_pendant(6)
        for v in range(1, 6):
            rec = next(c for c in local_2_cuts_at(g, 0, 2) if c.members == (0, v))
            assert frozenset({5 + v}) in rec.attached_components
            assert len(rec.full_components(g)) >= 2

    @given(graphs(max_n=9), st.integers(1, 3), st.data())
    def test_matches_definition(self, g, r, data):
        v = data.draw(st.integers(0, g.n - 1))
        got = sorted(u for c in local_2_cuts_at(g, v, r) for u in c.members if u != v)
        assert got == brute_local_2_cuts(g, v, r)

    @given(graphs(max_n=9), st.integers(1, 3))
    def test_records_are_consistent(self, g, r):
        for v in range(g.n):
            for rec in local_2_cuts_at(g, v, r):
                a, b = rec.members
                assert distances_from(g, a)[b] <= r
                assert len(rec.full_components(g)) >= 2
        assert local_2_cut_vertices(g, r) == {v for v in range(g.n) if local_2_cuts_at(g, v, r)}


class TestInteresting:
    def test_c6_antipodes(self):
        c6 = cycle_graph(6)
        for r in (3, 4, 7):
            for v in range(6):
                w = is_r_interesting(c6, v, r)
                assert w is not None and w.partner == (v + 3) % 6

    def test_clique_pendant_has_none(self):
        g = clique_pendant(6)
        assert all(is_r_interesting(g, v, r) is None for v in range(g.n) for r in (2, 5))

    def test_k4(self):
        assert all(is_r_interesting(complete_graph(4), v, 3) is None for v in range(4))

    def test_radius_below_two(self):
        with pytest.raises(ValueError):
            is_r_interesting(cycle_graph(6), 0, 1)

    @given(graphs(max_n=10), st.integers(2, 4))
    def test_witness_invariants(self, g, r):
        for v in range(g.n):
            w = is_r_interesting(g, v, r)
            if w is None:
                continue
            nu = g.closed(w.partner)
            assert not g.closed(v) <= nu
            assert w.private_neighbor in g.closed(v) - nu
            i, j = w.witness_components
            assert i != j
            for k in (i, j):
                assert w.cut.attached_components[k] - nu
            assert w.cut.members == tuple(sorted((v, w.partner)))
            assert w.partner in [u for c in local_2_cuts_at(g, v, r) for u in c.members if u != v]


class TestCutSets:
    def test_path(self):
        X, I = enumerate_cut_sets(path_graph(7), AlgorithmConfig(r1=2, r2=2))
        assert X == {1, 2, 3, 4, 5}

    def test_c6(self):
        X, I = enumerate_cut_sets(cycle_graph(6), AlgorithmConfig(r1=3, r2=3))
        assert X == frozenset() and I == set(range(6))

    def test_k6(self):
        for r in (2, 5):
            assert enumerate_cut_sets(complete_graph(6), AlgorithmConfig(r1=r, r2=r)) == (frozenset(), frozenset())


class TestKernels:
    @given(graphs(max_n=9), st.integers(1, 3))
    def test_jit_matches_python(self, g, r):
        indptr, indices = g.csr
        for v in range(g.n):
            assert kernels.is_local_1_cut(indptr, indices, g.n, v, r) == \
                python_impl(kernels.is_local_1_cut)(indptr, indices, g.n, v, r)
            a = kernels.scan_2cuts(indptr, indices, g.n, v, r, False)
            b = python_impl(kernels.scan_2cuts)(indptr, indices, g.n, v, r, False)
            assert a[0].tolist() == b[0].tolist() and a[1].tolist() == b[1].tolist()
