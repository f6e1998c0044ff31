"""Instance generators and a brute-force K_{2,t}-minor checker.

Families (``size`` meaning in brackets):

==============  ==========================================================
path, cycle     [n] the obvious graphs
tree            [n] uniform labelled tree (Pruefer code)
outerplanar     [n] random triangulated polygon; ``chord_prob`` thins it
fan             [length] centre joined to every vertex of a path on
                ``length + 2`` vertices
strip           [n] two paths joined by a monotone ladder of rungs, some
                squares carrying a crossed pair; ``drop`` removes end rungs
type1           [n] Hamiltonian cycle plus chords, each crossing at most one
                other, crossings only on quadrilaterals
augmentation    [m] random base graph on ``m`` vertices with fans and strips
                glued at their corners
clique_pendant  [k] K_k plus, for every v != 0, a vertex adjacent to 0 and v
random_filtered [n] random graphs rejected until free of a K_{2,t} minor
==============  ==========================================================
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .graph import Graph, distances_from

FAMILIES = (
    "path", "cycle", "tree", "outerplanar", "fan", "strip",
    "type1", "augmentation", "clique_pendant", "random_filtered",
)
MINOR_CAP = 20


class GenerationExhausted(RuntimeError):
    """Rejection sampling ran out of retries."""


class MinorSearchTooLarge(ValueError):
    """Graph exceeds the brute-force minor checker's cap."""


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    size: int
    params: Mapping = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if not isinstance(self.size, int) or self.size < 0:
            raise ValueError(f"size must be a non-negative integer, got {self.size!r}")

    def label(self) -> str:
        extra = "".join(f",{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({self.size}{extra})#{self.seed}"


def generate(spec: GeneratorSpec) -> Graph:
    params = dict(spec.params)
    shuffle = params.pop("shuffle", False)
    # shuffling only relabels, so it must not perturb the base stream
    rng = random.Random(f"{spec.family}/{spec.size}/{sorted(params.items())}/{spec.seed}")
    g = _BUILDERS[spec.family](spec.size, rng, **params)
    if shuffle:
        perm = list(range(g.n))
        rng.shuffle(perm)
        g = Graph(g.n, ((perm[u], perm[v]) for u, v in g.edges()))
    return g


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


# ---------------------------------------------------------------------------
# classic families


def path(n: int, rng=None) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int, rng=None) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def tree(n: int, rng: random.Random) -> Graph:
    _need(n >= 1, "tree needs n >= 1")
    if n <= 2:
        return path(n)
    code = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((u, w))
    return Graph(n, edges)


def _triangulation_chords(poly: list[int], rng: random.Random) -> list[tuple[int, int]]:
    chords = []
    stack = [poly]
    while stack:
        p = stack.pop()
        if len(p) <= 3:
            continue
        i = rng.randrange(1, len(p) - 1)
        if i > 1:
            chords.append((p[0], p[i]))
        if i < len(p) - 2:
            chords.append((p[i], p[-1]))
        stack.append(p[: i + 1])
        stack.append(p[i:])
    return chords


def outerplanar(n: int, rng: random.Random, chord_prob: float = 1.0) -> Graph:
    _need(n >= 3, "outerplanar needs n >= 3")
    _need(0.0 <= chord_prob <= 1.0, "chord_prob must lie in [0, 1]")
    chords = [c for c in _triangulation_chords(list(range(n)), rng) if rng.random() < chord_prob]
    return Graph(n, list(cycle(n).edges()) + chords)


def fan(length: int, rng=None) -> Graph:
    """Centre 0, path ``1 .. length + 2``; corners are 0, 1 and ``length + 2``."""
    _need(length >= 0, "fan length must be >= 0")
    k = length + 2
    edges = [(i, i + 1) for i in range(1, k)]
    edges += [(0, i) for i in range(1, k + 1)]
    return Graph(k + 1, edges)


def fan_corners(length: int) -> tuple[int, int, int]:
    return 0, 1, length + 2


def clique_pendant(k: int, rng=None) -> Graph:
    """K_k on ``0..k-1``; vertex ``k - 1 + v`` is adjacent to exactly 0 and v."""
    _need(k >= 2, "clique_pendant needs k >= 2")
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    for v in range(1, k):
        x = k - 1 + v
        edges += [(0, x), (v, x)]
    return Graph(2 * k - 1, edges)


# ---------------------------------------------------------------------------
# Hamiltonian-cycle families


def _crosses(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    a, b = sorted(c1)
    c, d = sorted(c2)
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def type1(n: int, rng: random.Random, density: float = 0.7) -> Graph:
    """Reference cycle ``0..n-1`` plus chords added in random order.

    A plain chord is kept if it crosses nothing; a crossed pair on the
    quadrilateral ``i, i+1, j, j+1`` is kept if neither diagonal crosses an
    existing chord.
    """
    _need(n >= 4, "type1 needs n >= 4")
    on_cycle = {frozenset((i, (i + 1) % n)) for i in range(n)}
    candidates: list[tuple[tuple[int, int], ...]] = []
    for a in range(n):
        for b in range(a + 2, n):
            if frozenset((a, b)) not in on_cycle:
                candidates.append(((a, b),))
    for i in range(n):
        for j in range(n):
            quad = (i, (i + 1) % n, j, (j + 1) % n)
            if len(set(quad)) < 4 or not i < j:
                continue
            d1, d2 = (i, j), ((i + 1) % n, (j + 1) % n)
            if frozenset(d1) in on_cycle or frozenset(d2) in on_cycle:
                continue
            candidates.append((d1, d2))
    rng.shuffle(candidates)
    chords: list[tuple[int, int]] = []
    have = set()
    for cand in candidates:
        if rng.random() > density:
            continue
        if any(frozenset(c) in have for c in cand):
            continue
        if any(_crosses(c, d) for c in cand for d in chords):
            continue
        chords.extend(cand)
        have.update(frozenset(c) for c in cand)
    return Graph(n, [tuple(sorted(e)) for e in on_cycle] + chords)


def type1_violations(g: Graph, order: Sequence[int] | None = None) -> list[str]:
    """Empty iff ``g`` is type-I with reference cycle ``order`` (default
    ``0..n-1``)."""
    order = list(range(g.n)) if order is None else list(order)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    cyc = {frozenset((order[i], order[(i + 1) % n])) for i in range(n)}
    out = [f"cycle edge {sorted(e)} missing" for e in cyc if not g.has_edge(*tuple(e))]
    chords = [(pos[u], pos[v]) for u, v in g.edges() if frozenset((u, v)) not in cyc]
    def next_to(x, y):
        return (x - y) % n in (1, n - 1)

    for c in chords:
        crossing = [d for d in chords if _crosses(c, d)]
        if len(crossing) > 1:
            out.append(f"chord {c} crosses {len(crossing)} chords")
        a, b = c
        for x, y in crossing:
            if not ((next_to(a, x) and next_to(b, y)) or (next_to(a, y) and next_to(b, x))):
                out.append(f"crossing {c} x {(x, y)} not on a quadrilateral")
    return out


@dataclass(frozen=True)
class Strip:
    graph: Graph
    corners: tuple[int, int, int, int]  # a, b, c, d with ab and cd the end edges
    top: tuple[int, ...]
    bottom: tuple[int, ...]


def strip_piece(k: int, l: int, rng: random.Random, cross_prob: float = 0.3,
                rung_prob: float = 0.8, drop: Iterable[str] = ()) -> Strip:
    """Top path ``0..k-1``, bottom path ``k..k+l-1``; end edges
    ``ab = (0, k)`` and ``cd = (k-1, k+l-1)``. ``drop`` is a subset of
    ``{"ab", "cd"}``; a dropped end is replaced by a crossed quadrilateral so
    the corners keep degree two."""
    _need(k >= 2 and l >= 2, "strip needs both paths of length >= 2")
    drop = set(drop)
    _need(drop <= {"ab", "cd"}, "drop must be a subset of {'ab', 'cd'}")
    _need(len(drop) < 2 or (k, l) == (2, 2) or min(k, l) >= 3,
          "dropping both end edges needs both paths of length >= 3")
    top = list(range(k))
    bot = list(range(k, k + l))
    end = (k - 1, l - 1)
    # with cd dropped the walk must reach the last quadrilateral first
    last = (k - 2, l - 2) if "cd" in drop else end
    edges = {(top[i], top[i + 1]) for i in range(k - 1)}
    edges |= {(bot[j], bot[j + 1]) for j in range(l - 1)}
    if "ab" not in drop:
        edges.add((top[0], bot[0]))
    if "cd" not in drop:
        edges.add((top[-1], bot[-1]))
    # monotone walk over (top index, bottom index); rungs and crossings
    # are laid along it so chords never interleave
    i = j = 0
    while (i, j) != end:
        forced = ("ab" in drop and (i, j) == (0, 0)) or ("cd" in drop and (i, j) == (k - 2, l - 2))
        if forced:
            step = (1, 1)
        else:
            moves = []
            if i < last[0]:
                moves.append((1, 0))
            if j < last[1]:
                moves.append((0, 1))
            if i < last[0] and j < last[1]:
                moves.append((1, 1))
            step = rng.choice(moves)
        if step == (1, 1) and (forced or rng.random() < cross_prob):
            edges.add((top[i], bot[j + 1]))
            edges.add((top[i + 1], bot[j]))
        i, j = i + step[0], j + step[1]
        if (i, j) != end and rng.random() < rung_prob:
            edges.add((top[i], bot[j]))
    g = Graph(k + l, edges)
    assert min(g.degree(v) for v in g.vertices()) >= 2
    return Strip(g, (top[0], bot[0], top[-1], bot[-1]), tuple(top), tuple(bot))


def strip(n: int, rng: random.Random, **kw) -> Graph:
    _need(n >= 4, "strip needs n >= 4")
    if len(set(kw.get("drop", ()))) == 2 and n != 4:
        _need(n >= 6, "dropping both end edges needs n >= 6")
        k = rng.randint(3, n - 3)
    else:
        k = rng.randint(2, n - 2)
    return strip_piece(k, n - k, rng, **kw).graph


def strip_radius(g: Graph, corners: Iterable[int]) -> int:
    """Largest distance from any vertex to any corner."""
    worst = 0
    for x in corners:
        d = distances_from(g, x)
        if (d < 0).any():
            raise ValueError("strip is disconnected")
        worst = max(worst, int(d.max()))
    return worst


# ---------------------------------------------------------------------------
# augmentations


@dataclass(frozen=True)
class Piece:
    """A fan (``size`` = length) or strip (``size`` = vertex count) glued to
    base vertices ``attach``, one per corner in corner order (fan: centre
    first)."""

    kind: str
    size: int
    attach: tuple[int, ...]


def check_identification(pieces: Sequence[Piece], m: int) -> None:
    """Raise ``ValueError`` unless every corner pair sharing a base vertex
    has a fan centre on one side and a fan centre or strip corner on the
    other."""
    at: dict[int, list[str]] = {}
    for idx, p in enumerate(pieces):
        _need(p.kind in ("fan", "strip"), f"piece {idx}: unknown kind {p.kind!r}")
        want = 3 if p.kind == "fan" else 4
        _need(len(p.attach) == want, f"piece {idx}: {p.kind} needs {want} attachment vertices")
        _need(len(set(p.attach)) == want, f"piece {idx}: corners must go to distinct base vertices")
        for j, v in enumerate(p.attach):
            _need(0 <= v < m, f"piece {idx}: attachment {v} outside base graph")
            role = "strip" if p.kind == "strip" else ("centre" if j == 0 else "side")
            at.setdefault(v, []).append(role)
    for v, roles in at.items():
        for r1, r2 in itertools.combinations(roles, 2):
            if not ((r1 == "centre" and r2 in ("centre", "strip")) or
                    (r2 == "centre" and r1 in ("centre", "strip"))):
                raise ValueError(f"base vertex {v}: corners {r1} and {r2} may not be identified")


def augment(base: Graph, pieces: Sequence[Piece], rng: random.Random) -> Graph:
    check_identification(pieces, base.n)
    edges = list(base.edges())
    n = base.n
    for p in pieces:
        if p.kind == "fan":
            h = fan(p.size)
            corners = fan_corners(p.size)
        else:
            _need(p.size >= 4, "strip pieces need at least 4 vertices")
            k = rng.randint(2, p.size - 2)
            s = strip_piece(k, p.size - k, rng)
            h, corners = s.graph, s.corners
        where = {}
        for c, v in zip(corners, p.attach):
            where[c] = v
        for x in h.vertices():
            if x not in where:
                where[x] = n
                n += 1
        edges += [(where[u], where[v]) for u, v in h.edges()]
    return Graph(n, edges)


def augmentation(m: int, rng: random.Random, pieces: int = 2, fan_len: int = 3,
                 strip_size: int = 6, base_p: float = 0.4, layout: Sequence[Piece] | None = None) -> Graph:
    """Random base graph on ``m`` vertices plus ``pieces`` fans/strips glued
    at random corners (or the explicit ``layout``)."""
    _need(m >= 4, "augmentation needs a base of at least 4 vertices")
    base_edges = [(u, v) for u in range(m) for v in range(u + 1, m) if rng.random() < base_p]
    base = Graph(m, base_edges)
    if layout is not None:
        return augment(base, [Piece(p.kind, p.size, tuple(p.attach)) if isinstance(p, Piece)
                              else Piece(p[0], p[1], tuple(p[2])) for p in layout], rng)
    chosen: list[Piece] = []
    for _ in range(pieces):
        for _attempt in range(100):
            kind = rng.choice(("fan", "strip"))
            size = fan_len if kind == "fan" else strip_size
            cand = Piece(kind, size, tuple(rng.sample(range(m), 3 if kind == "fan" else 4)))
            try:
                check_identification(chosen + [cand], m)
            except ValueError:
                continue
            chosen.append(cand)
            break
    return augment(base, chosen, rng)


# ---------------------------------------------------------------------------
# K_{2,t} minors


@dataclass(frozen=True)
class MinorWitness:
    """Two hub branch sets and ``t`` spoke branch sets; ``certificates``
    holds one host edge ``(hub vertex, spoke vertex)`` per hub/spoke pair."""

    hubs: tuple[frozenset[int], frozenset[int]]
    spokes: tuple[frozenset[int], ...]
    certificates: tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]

    @property
    def t(self) -> int:
        return len(self.spokes)

    @property
    def branch_sets(self) -> tuple[frozenset[int], ...]:
        return self.hubs + self.spokes

    def problems(self, g: Graph) -> list[str]:
        out = []
        sets = self.branch_sets
        seen: set[int] = set()
        for i, s in enumerate(sets):
            if not s:
                out.append(f"branch set {i} is empty")
                continue
            if seen & s:
                out.append(f"branch set {i} overlaps an earlier one")
            seen |= s
            if not _connected(g, s):
                out.append(f"branch set {i} is not connected")
        for h, hub in enumerate(self.hubs):
            certs = self.certificates[h]
            if len(certs) != self.t:
                out.append(f"hub {h} has {len(certs)} certificates for {self.t} spokes")
                continue
            for s, (x, y) in enumerate(certs):
                if x not in hub or y not in self.spokes[s] or not g.has_edge(x, y):
                    out.append(f"hub {h} / spoke {s}: bad certificate {(x, y)}")
        return out

    def validate(self, g: Graph) -> None:
        bad = self.problems(g)
        if bad:
            raise AssertionError("invalid minor witness: " + "; ".join(bad))


def _connected(g: Graph, s: frozenset[int]) -> bool:
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w in s and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(s)


def _masks(g: Graph) -> np.ndarray:
    out = np.zeros(g.n, dtype=np.int64)
    for v, nb in enumerate(g.adj):
        for w in nb:
            out[v] |= 1 << w
    return out


def _bits(m: int) -> frozenset[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return frozenset(out)


def _witness(g: Graph, p: int, q: int, spokes: list[int]) -> MinorWitness:
    hubs = (_bits(p), _bits(q))
    certs = []
    for hub in hubs:
        certs.append(tuple((min(w for w in g.adj[s] if w in hub), s) for s in spokes))
    return MinorWitness(hubs, tuple(frozenset((s,)) for s in spokes), (certs[0], certs[1]))


def contains_k2t_minor(g: Graph, t: int, cap: int = MINOR_CAP) -> MinorWitness | None:
    """Exhaustive search for a K_{2,t} minor model.

    Spokes can always be shrunk to single vertices (the rest of a spoke is
    absorbed into the hubs), so it suffices to find ``t`` vertices ``T`` and
    two disjoint connected sets of ``G - T`` each adjacent to all of ``T``.
    Partial choices of ``T`` are pruned when no component of the remainder
    touches all of them, or when a chosen vertex has fewer than two
    neighbours in such components.
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    if g.n > cap:
        raise MinorSearchTooLarge(f"minor search limited to {cap} vertices, got {g.n}")
    if g.n > kernels.MAX_MASK_N:
        raise MinorSearchTooLarge(f"minor search limited to {kernels.MAX_MASK_N} vertices")
    if g.n < t + 2:
        return None
    cands = np.array([v for v in g.vertices() if g.degree(v) >= 2], dtype=np.int64)
    if len(cands) < t:
        return None
    spokes, p, q = kernels.k2t_search(_masks(g), g.n, t, cands)
    if len(spokes) == 0:
        return None
    w = _witness(g, int(p), int(q), [int(s) for s in spokes])
    w.validate(g)
    return w


def certify_class(g: Graph, cap: int = MINOR_CAP) -> int:
    """Smallest ``t`` such that ``g`` has no K_{2,t} minor."""
    t = 1
    while contains_k2t_minor(g, t, cap) is not None:
        t += 1
    return t


def random_filtered(n: int, rng: random.Random, t: int = 3, retries: int = 2000,
                    cap: int = MINOR_CAP) -> Graph:
    """Random graph on ``n`` vertices with no K_{2,t} minor.

    Edge counts are drawn up to the extremal bound ``(t + 1)(n - 1) / 2``.
    """
    _need(n >= 1 and t >= 1, "random_filtered needs n >= 1 and t >= 1")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    top = min(len(pairs), (t + 1) * max(n - 1, 0) // 2)
    for _ in range(retries):
        m = rng.randint(min(n - 1, top) if n > 1 else 0, top) if top else 0
        g = Graph(n, rng.sample(pairs, m))
        if contains_k2t_minor(g, t, cap) is None:
            return g
    raise GenerationExhausted(f"no K_(2,{t})-minor-free graph on {n} vertices in {retries} tries")


_BUILDERS = {
    "path": path,
    "cycle": cycle,
    "tree": tree,
    "outerplanar": outerplanar,
    "fan": fan,
    "strip": strip,
    "type1": type1,
    "augmentation": augmentation,
    "clique_pendant": clique_pendant,
    "random_filtered": random_filtered,
}
