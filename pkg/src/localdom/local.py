"""Full-information LOCAL model simulator.

With unbounded messages, ``r`` synchronous rounds let a vertex learn exactly
the subgraph induced on its radius-``r`` ball, so a node program here is a
pure function of that ball (:class:`NodeView`). Multi-phase algorithms chain
programs: the outputs of one phase become the ``state`` visible in the next
phase's views, and round counts add up.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .graph import Graph, distances_from, induced_subgraph


@dataclass(frozen=True)
class NodeView:
    """Radius-``radius`` ball around ``root`` with original IDs as labels.

    ``graph`` is the induced subgraph renumbered in increasing label order,
    so local index comparisons agree with original-ID comparisons.
    ``state`` holds the previous phase's output for each local vertex.
    """

    root: int
    radius: int
    labels: tuple[int, ...]
    graph: Graph
    state: tuple | None = None

    @property
    def root_index(self) -> int:
        return self.index(self.root)

    def index(self, label: int) -> int:
        i = int(np.searchsorted(self.labels, label))
        if i >= len(self.labels) or self.labels[i] != label:
            raise KeyError(f"vertex {label} is outside the view of {self.root}")
        return i

    def __contains__(self, label: int) -> bool:
        i = int(np.searchsorted(self.labels, label))
        return i < len(self.labels) and self.labels[i] == label

    def neighbors(self, label: int) -> tuple[int, ...]:
        return tuple(self.labels[j] for j in self.graph.adj[self.index(label)])

    def state_of(self, label: int):
        return None if self.state is None else self.state[self.index(label)]

    def key(self, order_only: bool = False) -> tuple:
        """Comparison key; equal keys mean label-isomorphic views.

        With ``order_only`` the labels themselves are dropped and only their
        relative order (already encoded in the local numbering) is kept.
        """
        labels = None if order_only else self.labels
        return (self.radius, self.root_index, self.graph.n, self.graph.adj, labels, self.state)


@dataclass(frozen=True)
class RoundTranscript:
    rounds_used: int
    per_vertex_radius: dict = field(hash=False)
    phases: tuple[tuple[str, int], ...] = ()

    @classmethod
    def chain(cls, parts: Sequence[tuple["RoundTranscript", Callable[[int], int] | None]],
              vertices: Iterable[int]) -> "RoundTranscript":
        """Sequential composition.

        Each part comes with a map from the final graph's vertices to the
        vertex that acted for it in that phase (``None`` for identity).
        """
        per = {}
        for v in vertices:
            per[v] = sum(t.per_vertex_radius[(f(v) if f else v)] for t, f in parts)
        phases = tuple(p for t, _ in parts for p in t.phases)
        return cls(max(per.values(), default=0), per, phases)


@dataclass(frozen=True)
class NodeProgram:
    """A deterministic decision rule over a :class:`NodeView`.

    ``radius=None`` marks an adaptive program: it is handed the vertex's
    whole component and must return ``(output, radius_actually_read)``.
    """

    name: str
    radius: int | None
    decide: Callable[[NodeView], Any]


def collect_view(g: Graph, v: int, r: int | None, state: Sequence | None = None) -> NodeView:
    """Gather ``g[N^r[v]]``; ``r=None`` gathers the whole component of ``v``."""
    g.check_vertex(v)
    if r is not None and r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    dist = distances_from(g, v, -1 if r is None else r)
    members = np.flatnonzero(dist >= 0).tolist()
    sub, _ = induced_subgraph(g, members)
    radius = int(dist.max()) if r is None else r
    st = None if state is None else tuple(state[u] for u in members)
    return NodeView(int(v), radius, tuple(members), sub, st)


def run_local(g: Graph, prog: NodeProgram, state: Sequence | None = None,
              order: Iterable[int] | None = None) -> tuple[list, RoundTranscript]:
    """Evaluate ``prog`` at every vertex from its own view.

    ``order`` only permutes the evaluation sequence; outputs are written to
    per-vertex slots so the result cannot depend on it.
    """
    outputs: list = [None] * g.n
    per: dict[int, int] = {}
    for v in (range(g.n) if order is None else order):
        view = collect_view(g, v, prog.radius, state)
        if prog.radius is None:
            out, used = prog.decide(view)
            per[v] = int(used)
        else:
            out = prog.decide(view)
            per[v] = prog.radius
        outputs[v] = out
    rounds = prog.radius if prog.radius is not None else max(per.values(), default=0)
    return outputs, RoundTranscript(rounds, per, ((prog.name, rounds),))


def verify_locality(prog: NodeProgram, g1: Graph, v1: int, g2: Graph, v2: int,
                    state1: Sequence | None = None, state2: Sequence | None = None,
                    order_only: bool = False) -> bool:
    """False only if two label-isomorphic views yield different outputs."""
    a = collect_view(g1, v1, prog.radius, state1)
    b = collect_view(g2, v2, prog.radius, state2)
    if a.key(order_only) != b.key(order_only):
        return True
    return prog.decide(a) == prog.decide(b)
