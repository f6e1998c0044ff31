import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localdom import kernels
from localdom._jit import python_impl
from localdom.exact import (
    GAMMA_AT_LEAST_2,
    DominationInstance,
    ExactSizeError,
    InfeasibleError,
    _adj_masks,
    _compress,
    gamma,
    mds_enumerate,
    mds_exact,
    mds_size,
    mds_subset_exact,
    mvc_enumerate,
    mvc_exact,
    mvc_size,
    verify_dominating,
    verify_vertex_cover,
)
from localdom.invariants import separated_sets
from localdom.graph import Graph, closed_neighborhood, complete_graph, cycle_graph, path_graph, star_graph

from conftest import graphs, random_graph


class TestMds:
    def test_examples(self):
        assert len(mds_exact(complete_graph(5))) == 1
        assert len(mds_exact(cycle_graph(6))) == 2

    def test_p7_lex_minimum(self):
        # size 3; the lexicographically first optimum is {0, 2, 5}
        assert mds_exact(path_graph(7)) == {0, 2, 5}
        assert mds_enumerate(path_graph(7)) == {0, 2, 5}

    def test_empty_graph(self):
        assert mds_exact(Graph(0)) == frozenset()

    def test_size_cap(self):
        with pytest.raises(ExactSizeError):
            mds_exact(path_graph(30))
        with pytest.raises(ExactSizeError):
            mds_enumerate(path_graph(21))

    @given(graphs(max_n=11))
    def test_lex_minimum_matches_enumeration(self, g):
        s = mds_exact(g)
        assert s == mds_enumerate(g)
        assert verify_dominating(g, s)


class TestSubset:
    def test_empty_targets(self):
        assert mds_subset_exact(DominationInstance.of(cycle_graph(5), [])) == frozenset()

    def test_star_leaf(self):
        assert mds_subset_exact(DominationInstance.of(star_graph(4), [3])) == {0}

    def test_c6_antipodes(self):
        assert len(mds_subset_exact(DominationInstance.of(cycle_graph(6), [0, 3]))) == 2

    def test_infeasible(self):
        inst = DominationInstance.of(path_graph(4), [0], allowed=[3])
        assert not inst.feasible()
        with pytest.raises(InfeasibleError):
            mds_subset_exact(inst)

    @given(graphs(max_n=10), st.data())
    def test_against_enumeration(self, g, data):
        B = data.draw(st.sets(st.integers(0, g.n - 1)))
        allowed = closed_neighborhood(g, B)
        s = mds_subset_exact(DominationInstance.of(g, B))
        assert s <= allowed and verify_dominating(g, s, B)
        assert s == mds_enumerate(g, B, allowed)


class TestMvc:
    def test_examples(self):
        assert mvc_exact(path_graph(3)) == {1}
        assert mvc_exact(cycle_graph(6)) == {0, 2, 4}
        assert mvc_exact(Graph(4)) == frozenset()

    @given(graphs(max_n=11))
    def test_against_enumeration(self, g):
        s = mvc_exact(g)
        assert s == mvc_enumerate(g)
        assert verify_vertex_cover(g, s)


class TestChecks:
    def test_verify_dominating(self):
        c6 = cycle_graph(6)
        assert verify_dominating(c6, {0, 3})
        assert not verify_dominating(c6, {0})
        assert verify_dominating(c6, range(6))

    def test_gamma(self):
        s = star_graph(5)
        assert gamma(s, 3) == 1
        assert gamma(s, 0) == GAMMA_AT_LEAST_2
        assert all(gamma(cycle_graph(6), v) == GAMMA_AT_LEAST_2 for v in range(6))

    @given(graphs(max_n=8))
    def test_gamma_against_definition(self, g):
        for v in range(g.n):
            target = g.closed(v)
            one = any(target <= g.closed(u) for u in range(g.n) if u != v)
            assert (gamma(g, v) == 1) == one


class TestStructuralBounds:
    @given(graphs(min_n=2, max_n=12))
    def test_ore(self, g):
        if all(g.degree(v) for v in range(g.n)):
            assert 2 * mds_size(g) <= g.n

    def test_union_bound_random(self):
        rng = random.Random(5)
        for _ in range(200):
            g = random_graph(rng, rng.randint(3, 14), rng.uniform(0.1, 0.5))
            opt = mds_size(g)
            sets = separated_sets(g, rng, 4)
            hoods = [closed_neighborhood(g, r) for r in sets]
            for a, b in itertools.combinations(hoods, 2):
                assert not a & b
            total = sum(len(mds_subset_exact(DominationInstance.of(g, r))) for r in sets)
            assert total <= opt


class TestKernels:
    @given(graphs(max_n=9))
    def test_jit_matches_python(self, g):
        v = frozenset(range(g.n))
        universe, closed, t, a = _compress(DominationInstance(g, v, v))
        n = len(universe)
        k = kernels.min_dom_size(closed, n, t, a, n)
        assert k == python_impl(kernels.min_dom_size)(closed, n, t, a, n)
        if k:
            assert kernels.lexmin_dom(closed, n, t, a, k) == python_impl(kernels.lexmin_dom)(closed, n, t, a, k)
        adj = _adj_masks(g)
        full = (1 << g.n) - 1
        c = kernels.min_vc_size(adj, g.n, full, g.n)
        assert c == python_impl(kernels.min_vc_size)(adj, g.n, full, g.n)
        if c:
            assert kernels.lexmin_vc(adj, g.n, full, c) == python_impl(kernels.lexmin_vc)(adj, g.n, full, c)

    def test_budget_exceeded(self):
        c9 = cycle_graph(9)
        v = frozenset(range(9))
        universe, closed, t, a = _compress(DominationInstance(c9, v, v))
        assert kernels.min_dom_size(closed, 9, t, a, 2) == 3
