"""Immutable simple undirected graphs and the metric primitives built on them."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import kernels

INFINITE = math.inf
"""Sentinel returned by :func:`weak_diameter` when some pair is disconnected."""


class GraphFormatError(ValueError):
    """Malformed edge-list input."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable; adjacency is stored as sorted tuples, as CSR
    arrays for the kernels, and as Python-int bitmasks of closed
    neighbourhoods.
    """

    __slots__ = ("n", "adj", "m", "_indptr", "_indices", "_closed")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.m = sum(len(s) for s in nbrs) // 2
        self._indptr = None
        self._indices = None
        self._closed = None

    @classmethod
    def from_adjacency(cls, adj: Iterable[Iterable[int]]) -> "Graph":
        adj = [list(a) for a in adj]
        return cls(len(adj), ((u, v) for u, a in enumerate(adj) for v in a if u < v))

    # -- basic access ------------------------------------------------------

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield u, v

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise ValueError(f"invalid vertex {v!r} for graph with n={self.n}")

    def closed(self, v: int) -> frozenset[int]:
        return frozenset(self.adj[v]) | {v}

    # -- cached representations -------------------------------------------

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._indptr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v, nb in enumerate(self.adj):
                indptr[v + 1] = indptr[v] + len(nb)
            indices = np.fromiter(
                (w for nb in self.adj for w in nb), dtype=np.int64, count=int(indptr[-1])
            )
            self._indptr, self._indices = indptr, indices
        return self._indptr, self._indices

    @property
    def closed_masks(self) -> tuple[int, ...]:
        """Closed neighbourhoods as Python-int bitmasks."""
        if self._closed is None:
            out = []
            for v, nb in enumerate(self.adj):
                m = 1 << v
                for w in nb:
                    m |= 1 << w
                out.append(m)
            self._closed = tuple(out)
        return self._closed


def _validate(g: Graph, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(int(v) for v in S)
    for v in S:
        g.check_vertex(v)
    return S


# ---------------------------------------------------------------------------
# metric primitives


def distances_from(g: Graph, v: int, r: int = -1) -> np.ndarray:
    """BFS distances from ``v`` (-1 for unreachable or beyond ``r``)."""
    g.check_vertex(v)
    indptr, indices = g.csr
    return kernels.bfs_limited(indptr, indices, g.n, int(v), int(r))


def ball(g: Graph, v: int, r: int) -> frozenset[int]:
    """``N^r[v]``: vertices within distance ``r`` of ``v``."""
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    dist = distances_from(g, v, r)
    return frozenset(np.flatnonzero(dist >= 0).tolist())


def closed_neighborhood(g: Graph, S: Iterable[int]) -> frozenset[int]:
    S = _validate(g, S)
    out = set(S)
    for v in S:
        out.update(g.adj[v])
    return frozenset(out)


def weak_diameter(g: Graph, S: Iterable[int]) -> float:
    """Largest host-graph distance between two members of ``S``.

    Returns :data:`INFINITE` if some pair lies in different components.
    """
    S = sorted(_validate(g, S))
    if not S:
        raise ValueError("weak diameter of an empty set is undefined")
    best = 0
    for v in S:
        dist = distances_from(g, v)
        for u in S:
            if dist[u] < 0:
                return INFINITE
            best = max(best, int(dist[u]))
    return best


def r_components(g: Graph, S: Iterable[int], r: int) -> list[frozenset[int]]:
    """Partition ``S`` into classes linked by chains of hops of length ``<= r``."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    S = sorted(_validate(g, S))
    members = set(S)
    parent = {v: v for v in S}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in S:
        dist = distances_from(g, v, r)
        for u in np.flatnonzero(dist >= 0).tolist():
            if u in members:
                a, b = find(u), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for v in S:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(p) for p in groups.values()), key=min)


def connected_components(g: Graph) -> list[frozenset[int]]:
    indptr, indices = g.csr
    labels, k = kernels.label_components(indptr, indices, g.n, np.ones(g.n, dtype=np.bool_))
    parts: list[list[int]] = [[] for _ in range(k)]
    for v, c in enumerate(labels.tolist()):
        parts[c].append(v)
    return [frozenset(p) for p in parts]


def induced_subgraph(g: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """``g[S]`` with vertices renumbered in increasing order of original ID."""
    order = sorted(_validate(g, S))
    idx = {v: i for i, v in enumerate(order)}
    edges = [(idx[u], idx[w]) for u in order for w in g.adj[u] if w in idx and u < w]
    return Graph(len(order), edges), idx


def eccentricity_within(g: Graph, S: Iterable[int], v: int) -> float:
    """Eccentricity of ``v`` inside ``g[S]`` (infinite if ``g[S]`` is split)."""
    S = _validate(g, S)
    alive = np.zeros(g.n, dtype=np.bool_)
    alive[list(S)] = True
    indptr, indices = g.csr
    dist = kernels.bfs_within(indptr, indices, g.n, int(v), alive)
    vals = dist[alive]
    return INFINITE if (vals < 0).any() else int(vals.max())


def diameter_within(g: Graph, S: Iterable[int]) -> float:
    """Diameter of ``g[S]`` measured inside the induced subgraph."""
    S = _validate(g, S)
    if not S:
        return 0
    return max(eccentricity_within(g, S, v) for v in S)


# ---------------------------------------------------------------------------
# true twins


@dataclass(frozen=True)
class TwinReduction:
    """Result of deleting true twins.

    ``kept[i]`` is the original ID of reduced vertex ``i``;
    ``representative`` maps every original vertex to the kept member of its
    twin class.
    """

    reduced: Graph
    kept: tuple[int, ...]
    representative: dict[int, int] = field(hash=False)

    def lift(self, S: Iterable[int]) -> frozenset[int]:
        """Map reduced-graph IDs back to original IDs."""
        return frozenset(self.kept[i] for i in S)


def twin_representative(g: Graph, v: int) -> int:
    """Lowest-ID vertex with the same closed neighbourhood as ``v``."""
    cv = g.closed_masks[v]
    for u in g.adj[v]:
        if u < v and g.closed_masks[u] == cv:
            return u
    return v


def remove_true_twins(g: Graph) -> TwinReduction:
    rep = {v: twin_representative(g, v) for v in g.vertices()}
    kept = tuple(v for v in g.vertices() if rep[v] == v)
    reduced, _ = induced_subgraph(g, kept)
    return TwinReduction(reduced, kept, rep)


# ---------------------------------------------------------------------------
# edge-list I/O


def parse_edgelist(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1]), lineno))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {raw!r}") from None
    if not rows:
        raise GraphFormatError("missing 'n m' header")
    n, m, _ = rows[0]
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header")
    edges = rows[1:]
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    seen = set()
    for u, v, lineno in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
    return Graph(n, ((u, v) for u, v, _ in edges))


def format_edgelist(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edgelist(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edgelist(fh.read())


def write_edgelist(g: Graph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edgelist(g, comment))


# ---------------------------------------------------------------------------
# small constructors used throughout tests and generators


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(leaves: int) -> Graph:
    """Centre 0 joined to ``leaves`` leaves."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))
