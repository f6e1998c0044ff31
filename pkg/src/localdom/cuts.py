"""Local 1-cuts, minimal local 2-cuts and interesting vertices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .config import AlgorithmConfig
from .graph import Graph, distances_from


@dataclass(frozen=True)
class CutRecord:
    """A local cut together with the components it leaves in its ball.

    ``attached_components`` lists every component of
    ``g[union of N^r[c] for c in members] - members``, ordered by minimum ID.
    """

    members: tuple[int, ...]
    radius: int
    attached_components: tuple[frozenset[int], ...]
    minimal: bool = True

    def full_components(self, g: Graph) -> list[int]:
        """Indices of components adjacent to every cut member."""
        out = []
        for i, comp in enumerate(self.attached_components):
            if all(any(w in comp for w in g.adj[c]) for c in self.members):
                out.append(i)
        return out


@dataclass(frozen=True)
class InterestingWitness:
    """Certificate that ``vertex`` is interesting through ``partner``.

    ``private_neighbor`` lies in ``N[vertex] - N[partner]``; the two
    ``witness_components`` (indices into ``cut.attached_components``) each
    hold a vertex outside ``N[partner]``.
    """

    vertex: int
    partner: int
    cut: CutRecord
    private_neighbor: int
    witness_components: tuple[int, int]


def _ball_union_components(g: Graph, members, r: int) -> tuple[frozenset[int], ...]:
    alive = np.zeros(g.n, dtype=np.bool_)
    for c in members:
        alive |= distances_from(g, c, r) >= 0
    for c in members:
        alive[c] = False
    indptr, indices = g.csr
    labels, k = kernels.label_components(indptr, indices, g.n, alive)
    parts: list[list[int]] = [[] for _ in range(k)]
    for v, c in enumerate(labels.tolist()):
        if c >= 0:
            parts[c].append(v)
    return tuple(frozenset(p) for p in parts)


def _check(g: Graph, v: int, r: int) -> None:
    g.check_vertex(v)
    if r < 1:
        raise ValueError(f"radius must be positive, got {r}")


def local_1_cut_flag(g: Graph, v: int, r: int) -> bool:
    indptr, indices = g.csr
    return bool(kernels.is_local_1_cut(indptr, indices, g.n, int(v), int(r)))


def is_local_1_cut(g: Graph, v: int, r: int) -> CutRecord | None:
    """Record of ``{v}`` if removing ``v`` disconnects ``g[N^r[v]]``."""
    _check(g, v, r)
    if not local_1_cut_flag(g, v, r):
        return None
    return CutRecord((int(v),), r, _ball_union_components(g, (v,), r))


def _scan(g: Graph, v: int, r: int, first_interesting_only: bool = False):
    indptr, indices = g.csr
    partners, flags = kernels.scan_2cuts(indptr, indices, g.n, int(v), int(r), first_interesting_only)
    return partners.tolist(), flags.tolist()


def local_2_cuts_at(g: Graph, v: int, r: int) -> list[CutRecord]:
    """All minimal ``r``-local 2-cuts containing ``v``, by partner ID.

    ``{u, v}`` qualifies when ``dist(u, v) <= r`` and at least two components
    of ``g[N^r[u] | N^r[v]] - {u, v}`` contain a neighbour of ``u`` and a
    neighbour of ``v``; no single endpoint can separate such components.
    """
    _check(g, v, r)
    out = []
    for u, _ in zip(*_scan(g, v, r)):
        members = (min(u, v), max(u, v))
        out.append(CutRecord(members, r, _ball_union_components(g, members, r)))
    return out


def interesting_flag(g: Graph, v: int, r: int) -> bool:
    _, flags = _scan(g, v, r, first_interesting_only=True)
    return any(f & kernels.CUT_INTERESTING for f in flags)


def is_r_interesting(g: Graph, v: int, r: int) -> InterestingWitness | None:
    """Witness that ``v`` lies in a minimal ``r``-local 2-cut ``{u, v}`` with
    ``N[v]`` not inside ``N[u]`` and two components each holding a
    non-neighbour of ``u``. The partner with the smallest ID wins."""
    if r < 2:
        raise ValueError(f"interesting vertices are defined for r >= 2, got {r}")
    _check(g, v, r)
    partners, flags = _scan(g, v, r, first_interesting_only=True)
    for u, f in zip(partners, flags):
        if not f & kernels.CUT_INTERESTING:
            continue
        members = (min(u, v), max(u, v))
        comps = _ball_union_components(g, members, r)
        nu = g.closed(u)
        private = min(g.closed(v) - nu)
        far = [i for i, comp in enumerate(comps) if comp - nu]
        return InterestingWitness(int(v), int(u), CutRecord(members, r, comps), private, (far[0], far[1]))
    return None


def enumerate_cut_sets(g: Graph, cfg: AlgorithmConfig | None = None) -> tuple[frozenset[int], frozenset[int]]:
    """``(X, I)``: local 1-cut vertices at ``cfg.r1`` and interesting
    vertices at ``cfg.r2``."""
    cfg = cfg or AlgorithmConfig()
    X = frozenset(v for v in g.vertices() if local_1_cut_flag(g, v, cfg.r1))
    I = frozenset(v for v in g.vertices() if interesting_flag(g, v, cfg.r2))
    return X, I


def local_2_cut_vertices(g: Graph, r: int) -> frozenset[int]:
    """Every vertex lying in some minimal ``r``-local 2-cut."""
    return frozenset(v for v in g.vertices() if _scan(g, v, r)[0])
