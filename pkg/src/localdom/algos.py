"""Cut-based approximation algorithms and baselines, run as LOCAL node programs.

The dominating-set pipeline has three phases, each a :class:`NodeProgram`:

1. ``twins+cuts`` (radius ``max(r1, 2*r2) + 1``): every vertex learns the
   lowest-ID member of its true-twin class, and kept vertices compute their
   local 1-cut and interesting flags in the reduced network.
2. ``undominated`` (radius 2): domination by ``X | I`` and membership in
   ``U`` (dominated vertices whose whole closed neighbourhood is dominated).
3. ``brute``  (radius ``diam_cap + 1``): every vertex of a residual
   component sees the whole component and computes the same lex-minimum
   set dominating its undominated vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import cuts, exact, kernels
from .config import AlgorithmConfig, ControlConfig
from .graph import Graph, connected_components, distances_from, induced_subgraph
from .local import NodeProgram, NodeView, RoundTranscript, run_local

ONE_CUT = "ONE_CUT"
INTERESTING = "INTERESTING"
BRUTE = "BRUTE"
FALLBACK = "FALLBACK"
D2 = "D2"
ALL = "ALL"
DEGREE2 = "DEGREE2"
TWO_CUT = "TWO_CUT"


@dataclass
class RunResult:
    algorithm: str
    chosen: frozenset[int]
    phase_of: dict[int, str]
    rounds: RoundTranscript
    fallback_used: bool = False
    ratio_vs_exact: Fraction | None = None
    problem: str = "mds"
    cut_sets: dict[str, frozenset[int]] = field(default_factory=dict)
    fallback_reasons: tuple[str, ...] = ()

    def phase_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for p in self.phase_of.values():
            out[p] = out.get(p, 0) + 1
        return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# node programs


def _representatives(g: Graph, upto: np.ndarray) -> list[int]:
    """Lowest-index true twin of every vertex with ``upto`` set (else -1)."""
    cm = g.closed_masks
    out = [-1] * g.n
    for w in np.flatnonzero(upto).tolist():
        out[w] = min((u for u in g.adj[w] if cm[u] == cm[w]), default=w)
        out[w] = min(out[w], w)
    return out


def twin_cut_program(r1: int, r2: int) -> NodeProgram:
    """Fused twin reduction and cut test on the reduced network.

    A ball of radius ``R + 1`` fixes the twin class of every vertex within
    distance ``R``, and reduced distances equal original ones, so the view
    contains the reduced ball of radius ``R``. Output
    ``(representative, local 1-cut, interesting)``.
    """
    reach = max(r1, 2 * r2)

    def decide(view: NodeView) -> tuple[int, bool, bool]:
        g, r = view.graph, view.root_index
        dist = distances_from(g, r, reach)
        reps = _representatives(g, dist >= 0)
        if reps[r] != r:
            return view.labels[reps[r]], False, False
        kept = [w for w in range(g.n) if reps[w] == w]
        h, idx = induced_subgraph(g, kept)
        hr = idx[r]
        return view.root, cuts.local_1_cut_flag(h, hr, r1), cuts.interesting_flag(h, hr, r2)

    return NodeProgram("twins+cuts", reach + 1, decide)


def cut_program(r1: int, r2: int, two_cut_mode: bool = False) -> NodeProgram:
    """Flags ``(local 1-cut, interesting)``; in ``two_cut_mode`` the second
    flag is membership in any minimal local 2-cut instead."""

    def decide(view: NodeView) -> tuple[bool, bool]:
        g, r = view.graph, view.root_index
        one = cuts.local_1_cut_flag(g, r, r1)
        if two_cut_mode:
            two = bool(cuts._scan(g, r, r2)[0])
        else:
            two = cuts.interesting_flag(g, r, r2)
        return one, two

    return NodeProgram("cuts", max(r1, 2 * r2), decide)


def _undominated_decide(view: NodeView) -> tuple[bool, bool]:
    g, r = view.graph, view.root_index
    in_y = [any(s) for s in view.state]

    def dominated(i):
        return in_y[i] or any(in_y[j] for j in g.adj[i])

    dom = dominated(r)
    in_u = dom and all(dominated(j) for j in g.adj[r])
    return dom, in_u


UNDOMINATED_PROGRAM = NodeProgram("undominated", 2, _undominated_decide)


def _residual_component(view: NodeView, residual: np.ndarray):
    g = view.graph
    indptr, indices = g.csr
    dist = kernels.bfs_within(indptr, indices, g.n, view.root_index, residual)
    return dist


def brute_program(diam_cap: int | None, brute_cap: int) -> NodeProgram:
    """Residual-component solver; state per vertex is
    ``(in_Y, dominated, in_U)``. Output ``(chosen, phase or None, fallback
    reason or None)``."""
    cache: dict = {}

    def decide(view: NodeView):
        g = view.graph
        r = view.root_index
        in_y = np.array([s[0] for s in view.state], dtype=np.bool_)
        dom = np.array([s[1] for s in view.state], dtype=np.bool_)
        in_u = np.array([s[2] for s in view.state], dtype=np.bool_)
        residual = ~(in_y | in_u)
        adaptive = diam_cap is None

        def done(out, used):
            return (out, used) if adaptive else out

        if not residual[r]:
            return done((False, None, None), 0)
        dist = _residual_component(view, residual)
        ecc = int(dist.max())
        used = ecc + 1
        reason = None
        if not adaptive and ecc > diam_cap:
            reason = "diameter"
        comp = np.flatnonzero(dist >= 0)
        if reason is None:
            key = tuple(view.labels[i] for i in comp.tolist())
            if key in cache:
                sol, reason = cache[key]
            else:
                sol, reason = _solve_component(g, comp, dom, diam_cap, brute_cap, view.labels)
                cache[key] = (sol, reason)
        if reason is not None:
            if not dom[r]:
                return done((True, FALLBACK, reason), used)
            return done((False, None, reason), used)
        chosen = view.root in sol
        return done((chosen, BRUTE if chosen else None, None), used)

    return NodeProgram("brute", None if diam_cap is None else diam_cap + 1, decide)


def _solve_component(g: Graph, comp: np.ndarray, dom: np.ndarray, diam_cap, brute_cap, labels):
    members = comp.tolist()
    if len(members) > brute_cap:
        return None, "size"
    sub, idx = induced_subgraph(g, members)
    if diam_cap is not None:
        indptr, indices = sub.csr
        for s in range(sub.n):
            if int(kernels.bfs_limited(indptr, indices, sub.n, s, -1).max()) > diam_cap:
                return None, "diameter"
    targets = [idx[i] for i in members if not dom[i]]
    if not targets:
        return frozenset(), None
    inst = exact.DominationInstance.of(sub, targets)
    sol = exact.mds_subset_exact(inst, cap=brute_cap)
    inv = {j: labels[i] for i, j in idx.items()}
    return frozenset(inv[j] for j in sol), None


def vc_brute_program(diam_cap: int | None, brute_cap: int) -> NodeProgram:
    """Exact vertex cover of the residual component; state is ``in_S``."""
    cache: dict = {}

    def decide(view: NodeView):
        g = view.graph
        r = view.root_index
        residual = ~np.array(view.state, dtype=np.bool_)
        adaptive = diam_cap is None

        def done(out, used):
            return (out, used) if adaptive else out

        if not residual[r]:
            return done((False, None, None), 0)
        dist = _residual_component(view, residual)
        ecc = int(dist.max())
        used = ecc + 1
        members = np.flatnonzero(dist >= 0).tolist()
        reason = None
        if not adaptive and ecc > diam_cap:
            reason = "diameter"
        elif len(members) > brute_cap:
            reason = "size"
        if reason is None:
            key = tuple(view.labels[i] for i in members)
            if key not in cache:
                sub, idx = induced_subgraph(g, members)
                if diam_cap is not None and _diameter(sub) > diam_cap:
                    cache[key] = (None, "diameter")
                else:
                    inv = {j: view.labels[i] for i, j in idx.items()}
                    cache[key] = (frozenset(inv[j] for j in exact.mvc_exact(sub, cap=brute_cap)), None)
            sol, reason = cache[key]
        if reason is not None:
            has_edge = any(residual[j] for j in g.adj[r])
            return done((has_edge, FALLBACK if has_edge else None, reason), used)
        chosen = view.root in sol
        return done((chosen, BRUTE if chosen else None, None), used)

    return NodeProgram("brute", None if diam_cap is None else diam_cap + 1, decide)


def _diameter(g: Graph) -> int:
    indptr, indices = g.csr
    return max((int(kernels.bfs_limited(indptr, indices, g.n, s, -1).max()) for s in range(g.n)), default=0)


# ---------------------------------------------------------------------------
# pipelines


def _mds_pipeline(name: str, g: Graph, cfg: AlgorithmConfig) -> RunResult:
    first, t_first = run_local(g, twin_cut_program(cfg.r1, cfg.r2))
    reps = [f[0] for f in first]
    kept = [v for v in g.vertices() if reps[v] == v]
    h, hidx = induced_subgraph(g, kept)
    to_h = lambda v: hidx[reps[v]]  # noqa: E731
    flags = [first[v][1:] for v in kept]
    dom, t_dom = run_local(h, UNDOMINATED_PROGRAM, state=flags)
    state = [(any(flags[i]), dom[i][0], dom[i][1]) for i in range(h.n)]
    brute, t_brute = run_local(h, brute_program(cfg.diam_cap, cfg.brute_cap), state=state)

    phase_of: dict[int, str] = {}
    reasons = set()
    for i in range(h.n):
        one, inter = flags[i]
        if one:
            phase_of[kept[i]] = ONE_CUT
        elif inter:
            phase_of[kept[i]] = INTERESTING
        chosen, phase, reason = brute[i]
        if chosen:
            phase_of[kept[i]] = phase
        if reason:
            reasons.add(reason)
    transcript = RoundTranscript.chain(
        [(t_first, None), (t_dom, to_h), (t_brute, to_h)], g.vertices()
    )
    cut_sets = {
        "X": frozenset(kept[i] for i in range(h.n) if flags[i][0]),
        "I": frozenset(kept[i] for i in range(h.n) if flags[i][1]),
        "U": frozenset(kept[i] for i in range(h.n) if dom[i][1]),
    }
    return RunResult(
        name,
        frozenset(phase_of),
        dict(sorted(phase_of.items())),
        transcript,
        fallback_used=bool(reasons),
        cut_sets=cut_sets,
        fallback_reasons=tuple(sorted(reasons)),
    )


def algo1_mds(g: Graph, cfg: AlgorithmConfig | None = None) -> RunResult:
    """Cut-based dominating set with fixed radii and a diameter cap.

    Components of the residual graph whose diameter exceeds ``diam_cap`` (or
    whose size exceeds ``brute_cap``) fall back to taking all their
    undominated vertices; the result is still dominating but the ratio
    guarantee is void and ``fallback_used`` is set.
    """
    return _mds_pipeline("algo1", g, cfg or AlgorithmConfig())


def algo2_mds(g: Graph, ctl: ControlConfig) -> RunResult:
    """Same pipeline with radii taken from the class's control function.

    Without a ``diam_cap`` the brute-force phase is adaptive: each vertex
    gathers exactly as far as its residual component reaches, so no bound
    on the excluded minor is needed.
    """
    return _mds_pipeline("algo2", g, ctl.to_algorithm_config())


def algo_3round(g: Graph) -> RunResult:
    """Twin-free representatives whose closed neighbourhood is not contained
    in another vertex's closed neighbourhood."""
    out, t = run_local(g, THREE_ROUND_PROGRAM)
    chosen = frozenset(v for v in g.vertices() if out[v])
    return RunResult("3round", chosen, {v: D2 for v in sorted(chosen)}, t)


def _three_round_decide(view: NodeView) -> bool:
    g, r = view.graph, view.root_index
    cm = g.closed_masks
    mine = cm[r]
    for u in g.adj[r]:
        if cm[u] == mine and u < r:
            return False  # not the class representative
        if cm[u] & mine == mine and cm[u] != mine:
            return False  # gamma == 1
    return True


# Membership only needs the radius-2 ball; three rounds is the published count.
THREE_ROUND_PROGRAM = NodeProgram("d2", 3, _three_round_decide)


def algo_mvc(g: Graph, cfg: AlgorithmConfig | None = None) -> RunResult:
    """Vertex-cover variant: take local 1-cut vertices and every vertex of a
    minimal local 2-cut, then cover each residual component exactly."""
    cfg = cfg or AlgorithmConfig()
    flags, t_cut = run_local(g, cut_program(cfg.r1, cfg.r2, two_cut_mode=True))
    in_s = [a or b for a, b in flags]
    brute, t_brute = run_local(g, vc_brute_program(cfg.diam_cap, cfg.brute_cap), state=in_s)
    phase_of: dict[int, str] = {}
    reasons = set()
    for v in g.vertices():
        one, two = flags[v]
        if one:
            phase_of[v] = ONE_CUT
        elif two:
            phase_of[v] = TWO_CUT
        chosen, phase, reason = brute[v]
        if chosen:
            phase_of[v] = phase
        if reason:
            reasons.add(reason)
    transcript = RoundTranscript.chain([(t_cut, None), (t_brute, None)], g.vertices())
    cut_sets = {
        "X": frozenset(v for v in g.vertices() if flags[v][0]),
        "T": frozenset(v for v in g.vertices() if flags[v][1]),
    }
    return RunResult("mvc", frozenset(phase_of), dict(sorted(phase_of.items())), transcript,
                     fallback_used=bool(reasons), problem="mvc", cut_sets=cut_sets,
                     fallback_reasons=tuple(sorted(reasons)))


# ---------------------------------------------------------------------------
# baselines


def _is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and len(connected_components(g)) == 1


# Degree is visible at radius 1, but counting neighbours by received messages
# takes a second round in the message-passing accounting.
DEGREE2_PROGRAM = NodeProgram("degree2", 2, lambda view: view.graph.degree(view.root_index) >= 2)


def baseline_degree2(g: Graph) -> frozenset[int]:
    """Internal vertices of a tree on at least three vertices."""
    return _degree2_run(g).chosen


def _degree2_run(g: Graph) -> RunResult:
    if g.n < 3:
        raise ValueError(f"degree-2 baseline needs at least 3 vertices, got {g.n}")
    if not _is_tree(g):
        raise ValueError("degree-2 baseline is only defined on trees")
    out, t = run_local(g, DEGREE2_PROGRAM)
    chosen = frozenset(v for v in g.vertices() if out[v])
    return RunResult("degree2", chosen, {v: DEGREE2 for v in sorted(chosen)}, t)


def baseline_all(g: Graph) -> frozenset[int]:
    return frozenset(g.vertices())


def _all_run(g: Graph) -> RunResult:
    out, t = run_local(g, NodeProgram("all", 0, lambda view: True))
    return RunResult("all", frozenset(g.vertices()), {v: ALL for v in g.vertices()}, t)


# ---------------------------------------------------------------------------
# registry


def _algo2_from_cfg(g: Graph, cfg: AlgorithmConfig) -> RunResult:
    table = {5: cfg.r1 - 2, 11: cfg.r2 - 5}
    return algo2_mds(g, ControlConfig(dim=1, control=table, diam_cap=None, seed=cfg.seed))


ALGORITHMS: dict[str, Callable[[Graph, AlgorithmConfig], RunResult]] = {
    "algo1": lambda g, cfg: algo1_mds(g, cfg),
    "algo2": _algo2_from_cfg,
    "3round": lambda g, cfg: algo_3round(g),
    "mvc": lambda g, cfg: algo_mvc(g, cfg),
    "degree2": lambda g, cfg: _degree2_run(g),
    "all": lambda g, cfg: _all_run(g),
}

PROBLEM = {"algo1": "mds", "algo2": "mds", "3round": "mds", "mvc": "mvc", "degree2": "mds", "all": "mds"}


def run_algorithm(name: str, g: Graph, cfg: AlgorithmConfig | None = None) -> RunResult:
    try:
        fn = ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}") from None
    return fn(g, cfg or AlgorithmConfig())


def is_valid(result: RunResult, g: Graph) -> bool:
    if result.problem == "mvc":
        return exact.verify_vertex_cover(g, result.chosen)
    return exact.verify_dominating(g, result.chosen)


def with_ratio(result: RunResult, g: Graph, cap: int = exact.DEFAULT_EXACT_CAP) -> RunResult:
    """Attach ``|chosen| / optimum`` as an exact fraction (when the optimum is
    nonzero and the graph is under ``cap``)."""
    opt = exact.mvc_size(g, cap) if result.problem == "mvc" else exact.mds_size(g, cap)
    if opt:
        result.ratio_vs_exact = Fraction(len(result.chosen), opt)
    return result
