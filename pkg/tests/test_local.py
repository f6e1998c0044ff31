import random

from hypothesis import given
from hypothesis import strategies as st

from localdom.exact import mds_exact
from localdom.graph import Graph, cycle_graph, path_graph, star_graph
from localdom.local import NodeProgram, RoundTranscript, collect_view, run_local, verify_locality

from conftest import graphs

DEGREE = NodeProgram("deg>=2", 1, lambda view: view.graph.degree(view.root_index) >= 2)
CONSTANT = NodeProgram("yes", 0, lambda view: True)


def view_mds(view):
    return view.root in {view.labels[i] for i in mds_exact(view.graph)}


class TestCollectView:
    def test_radius_zero(self):
        v = collect_view(cycle_graph(5), 3, 0)
        assert v.labels == (3,) and v.graph.m == 0

    def test_whole_path(self):
        v = collect_view(path_graph(5), 2, 2)
        assert v.labels == (0, 1, 2, 3, 4) and v.graph == path_graph(5)

    def test_induced_edges_only(self):
        v = collect_view(cycle_graph(6), 0, 1)
        assert v.labels == (0, 1, 5)
        assert v.neighbors(5) == (0,) and v.neighbors(1) == (0,)

    def test_edges_between_boundary_vertices_kept(self):
        v = collect_view(cycle_graph(5), 0, 2)
        assert v.graph.has_edge(v.index(2), v.index(3))

    def test_whole_component(self):
        g = Graph(5, [(0, 1), (1, 2), (3, 4)])
        v = collect_view(g, 0, None)
        assert v.labels == (0, 1, 2) and v.radius == 2


class TestRunLocal:
    def test_degree_program(self):
        out, t = run_local(path_graph(4), DEGREE)
        assert out == [False, True, True, False]
        assert t.rounds_used == 1 and set(t.per_vertex_radius.values()) == {1}

    def test_constant(self):
        out, t = run_local(cycle_graph(4), CONSTANT)
        assert out == [True] * 4 and t.rounds_used == 0

    def test_view_mds_on_p3(self):
        out, _ = run_local(path_graph(3), NodeProgram("mds", 2, view_mds))
        assert out == [False, True, False]

    @given(graphs(max_n=10), st.randoms(use_true_random=False))
    def test_order_independent_and_deterministic(self, g, r):
        prog = NodeProgram("mds", 1, view_mds)
        a, ta = run_local(g, prog)
        order = list(range(g.n))
        r.shuffle(order)
        b, tb = run_local(g, prog, order=order)
        assert a == b and ta == tb and ta.rounds_used == 1

    def test_chain_adds_rounds(self):
        _, t1 = run_local(path_graph(3), DEGREE)
        _, t2 = run_local(path_graph(3), NodeProgram("two", 2, lambda v: 0))
        t = RoundTranscript.chain([(t1, None), (t2, None)], range(3))
        assert t.rounds_used == 3 and t.phases == (("deg>=2", 1), ("two", 2))


class TestVerifyLocality:
    def test_same_vertex(self):
        assert verify_locality(DEGREE, cycle_graph(6), 2, cycle_graph(6), 2)

    def test_path_centre_versus_cycle(self):
        prog = NodeProgram("mds", 5, view_mds)
        p, c = path_graph(101), cycle_graph(202)
        a, b = collect_view(p, 50, 5), collect_view(c, 50, 5)
        assert a.key() == b.key()
        assert verify_locality(prog, p, 50, c, 50)

    def test_non_isomorphic_views_pass_vacuously(self):
        assert verify_locality(DEGREE, star_graph(3), 0, star_graph(3), 1)

    def test_id_dependent_program_on_identical_views(self):
        parity = NodeProgram("parity", 1, lambda view: view.root % 2 == 0)
        assert verify_locality(parity, path_graph(9), 4, cycle_graph(12), 4)

    def test_order_only_mode(self):
        # same shape, shifted labels: only order-only comparison treats them as equal
        a, b = path_graph(5), path_graph(7)
        prog = NodeProgram("deg", 1, lambda view: view.graph.degree(view.root_index))
        assert collect_view(a, 2, 1).key(True) == collect_view(b, 3, 1).key(True)
        assert collect_view(a, 2, 1).key() != collect_view(b, 3, 1).key()
        assert verify_locality(prog, a, 2, b, 3, order_only=True)

    def test_random_padding_pairs(self):
        rng = random.Random(3)
        prog = NodeProgram("mds", 2, view_mds)
        for _ in range(30):
            n = rng.randint(2, 9)
            g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
            big = Graph(n + 4, list(g.edges()) + [(n, n + 1), (n + 2, n + 3)])
            for v in range(n):
                assert verify_locality(prog, g, v, big, v)
