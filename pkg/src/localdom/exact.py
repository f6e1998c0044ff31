"""Exponential-time exact solvers for domination and vertex cover.

Two independent routes are provided for each problem: a branch-and-bound
kernel (:mod:`localdom.kernels`) and plain subset enumeration by increasing
cardinality. Both return the lexicographically smallest optimum, i.e. the
optimum whose sorted ID sequence is smallest.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .graph import Graph

DEFAULT_EXACT_CAP = 25
DEFAULT_ENUM_CAP = 20
GAMMA_AT_LEAST_2 = 2


class ExactSizeError(ValueError):
    """Instance larger than the configured exact-solver cap."""


class InfeasibleError(ValueError):
    """Some target has no allowed dominator."""


def _guard(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise ExactSizeError(f"{what}: {size} vertices exceeds cap {cap}")
    if size > kernels.MAX_MASK_N:
        raise ExactSizeError(f"{what}: {size} vertices exceeds bitmask width {kernels.MAX_MASK_N}")


@dataclass(frozen=True)
class DominationInstance:
    """Dominate ``targets`` using only vertices of ``allowed``."""

    graph: Graph
    targets: frozenset[int]
    allowed: frozenset[int]

    @classmethod
    def of(cls, g: Graph, targets: Iterable[int], allowed: Iterable[int] | None = None) -> "DominationInstance":
        targets = frozenset(targets)
        if allowed is None:
            allowed = frozenset(w for t in targets for w in g.closed(t))
        return cls(g, targets, frozenset(allowed))

    def feasible(self) -> bool:
        return all(self.graph.closed(t) & self.allowed for t in self.targets)


def _compress(inst: DominationInstance):
    universe = sorted(inst.targets | inst.allowed)
    idx = {v: i for i, v in enumerate(universe)}
    closed = np.zeros(len(universe), dtype=np.int64)
    for v in universe:
        m = 0
        for w in inst.graph.closed(v):
            if w in idx:
                m |= 1 << idx[w]
        closed[idx[v]] = m
    tmask = sum(1 << idx[t] for t in inst.targets)
    amask = sum(1 << idx[a] for a in inst.allowed)
    return universe, closed, tmask, amask


def _bits(mask: int, universe) -> frozenset[int]:
    mask = int(mask)
    return frozenset(universe[i] for i in range(len(universe)) if (mask >> i) & 1)


def mds_subset_size(inst: DominationInstance, cap: int = DEFAULT_EXACT_CAP) -> int:
    for v in inst.targets | inst.allowed:
        inst.graph.check_vertex(v)
    if not inst.feasible():
        raise InfeasibleError("some target has no allowed dominator")
    if not inst.targets:
        return 0
    universe, closed, tmask, amask = _compress(inst)
    _guard(len(universe), cap, "domination instance")
    return int(kernels.min_dom_size(closed, len(universe), tmask, amask, len(universe)))


def mds_subset_exact(inst: DominationInstance, cap: int = DEFAULT_EXACT_CAP) -> frozenset[int]:
    """Lexicographically smallest minimum subset of ``allowed`` dominating
    ``targets``."""
    k = mds_subset_size(inst, cap)
    if k == 0:
        return frozenset()
    universe, closed, tmask, amask = _compress(inst)
    mask = kernels.lexmin_dom(closed, len(universe), tmask, amask, k)
    out = _bits(mask, universe)
    assert len(out) == k, "lex-min reconstruction lost optimality"
    return out


def mds_exact(g: Graph, cap: int = DEFAULT_EXACT_CAP) -> frozenset[int]:
    _guard(g.n, cap, "mds_exact")
    v = frozenset(g.vertices())
    return mds_subset_exact(DominationInstance(g, v, v), cap)


def mds_size(g: Graph, cap: int = DEFAULT_EXACT_CAP) -> int:
    _guard(g.n, cap, "mds_size")
    v = frozenset(g.vertices())
    return mds_subset_size(DominationInstance(g, v, v), cap)


def mds_enumerate(g: Graph, targets: Iterable[int] | None = None,
                  allowed: Iterable[int] | None = None, cap: int = DEFAULT_ENUM_CAP) -> frozenset[int]:
    """Reference oracle: try every subset by increasing size in lex order."""
    if g.n > cap:
        raise ExactSizeError(f"mds_enumerate: {g.n} vertices exceeds cap {cap}")
    targets = frozenset(g.vertices()) if targets is None else frozenset(targets)
    allowed = sorted(frozenset(g.vertices()) if allowed is None else frozenset(allowed))
    need = sum(1 << t for t in targets)
    masks = g.closed_masks
    for k in range(len(allowed) + 1):
        for combo in itertools.combinations(allowed, k):
            cov = 0
            for c in combo:
                cov |= masks[c]
            if cov & need == need:
                return frozenset(combo)
    raise InfeasibleError("some target has no allowed dominator")


# ---------------------------------------------------------------------------
# vertex cover


def _adj_masks(g: Graph) -> np.ndarray:
    out = np.zeros(g.n, dtype=np.int64)
    for v, nb in enumerate(g.adj):
        m = 0
        for w in nb:
            m |= 1 << w
        out[v] = m
    return out


def mvc_size(g: Graph, cap: int = DEFAULT_EXACT_CAP) -> int:
    _guard(g.n, cap, "mvc_size")
    if g.m == 0:
        return 0
    return int(kernels.min_vc_size(_adj_masks(g), g.n, (1 << g.n) - 1, g.n))


def mvc_exact(g: Graph, cap: int = DEFAULT_EXACT_CAP) -> frozenset[int]:
    """Lexicographically smallest minimum vertex cover."""
    k = mvc_size(g, cap)
    if k == 0:
        return frozenset()
    mask = kernels.lexmin_vc(_adj_masks(g), g.n, (1 << g.n) - 1, k)
    out = _bits(mask, range(g.n))
    assert len(out) == k and verify_vertex_cover(g, out)
    return out


def mvc_enumerate(g: Graph, cap: int = DEFAULT_ENUM_CAP) -> frozenset[int]:
    if g.n > cap:
        raise ExactSizeError(f"mvc_enumerate: {g.n} vertices exceeds cap {cap}")
    edges = list(g.edges())
    for k in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), k):
            s = set(combo)
            if all(u in s or v in s for u, v in edges):
                return frozenset(combo)
    raise AssertionError("unreachable: V is always a cover")


# ---------------------------------------------------------------------------
# checks


def verify_dominating(g: Graph, S: Iterable[int], B: Iterable[int] | None = None) -> bool:
    """Every vertex of ``B`` (default: all) is in ``S`` or adjacent to it."""
    S = set(S)
    B = g.vertices() if B is None else B
    return all(b in S or any(w in S for w in g.adj[b]) for b in B)


def verify_vertex_cover(g: Graph, S: Iterable[int]) -> bool:
    S = set(S)
    return all(u in S or v in S for u, v in g.edges())


def gamma(g: Graph, v: int) -> int:
    """1 if some other vertex's closed neighbourhood contains ``N[v]``,
    else :data:`GAMMA_AT_LEAST_2`."""
    g.check_vertex(v)
    cv = g.closed_masks[v]
    for u in g.adj[v]:
        if g.closed_masks[u] & cv == cv:
            return 1
    return GAMMA_AT_LEAST_2
