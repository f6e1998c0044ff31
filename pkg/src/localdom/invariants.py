"""Checkable guarantees, shared by ``localdom verify`` and the test-suite.

Every check returns a :class:`Check`; ``ok is None`` means the check was
skipped (instance too large for an oracle, precondition not met).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import algos, exact, gen
from .config import AlgorithmConfig, ControlConfig
from .cuts import enumerate_cut_sets
from .graph import Graph, closed_neighborhood
from .local import NodeProgram, run_local, verify_locality

# Counting constants at asymptotic dimension 1.
ONE_CUT_FACTOR = 3 * 2
INTERESTING_FACTOR = 22 * 2
ALGO1_RATIO = ControlConfig(dim=1, control={5: 0, 11: 0}).ratio_bound()


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool | None
    detail: str = ""

    def as_dict(self) -> dict:
        return {"check": self.name, "ok": self.ok, "detail": self.detail}


def oracle_agreement(g: Graph, cap: int = exact.DEFAULT_ENUM_CAP) -> Check:
    if g.n > cap:
        return Check("oracle", None, f"n={g.n} above enumeration cap")
    a, b = exact.mds_size(g, cap), len(exact.mds_enumerate(g, cap=cap))
    c, d = exact.mvc_size(g, cap), len(exact.mvc_enumerate(g, cap=cap))
    return Check("oracle", a == b and c == d, f"mds {a}/{b} mvc {c}/{d}")


def ore_bound(g: Graph, mds: int) -> Check:
    if any(g.degree(v) == 0 for v in g.vertices()):
        return Check("ore", None, "isolated vertex")
    return Check("ore", 2 * mds <= g.n, f"mds={mds} n={g.n}")


def separated_sets(g: Graph, rng: random.Random, k: int) -> list[frozenset[int]]:
    """Up to ``k`` non-empty vertex sets with pairwise disjoint closed
    neighbourhoods, grown greedily in random order."""
    order = list(g.vertices())
    rng.shuffle(order)
    groups: list[set[int]] = []
    hoods: list[set[int]] = []
    for v in order:
        nv = set(g.closed(v))
        fits = [i for i in range(len(groups))
                if all(not (nv & hoods[j]) for j in range(len(groups)) if j != i)]
        clear = all(not (nv & h) for h in hoods)
        if clear and len(groups) < k and (not fits or rng.random() < 0.5):
            groups.append({v})
            hoods.append(nv)
        elif fits and rng.random() < 0.6:
            i = rng.choice(fits)
            groups[i].add(v)
            hoods[i] |= nv
    return [frozenset(s) for s in groups]


def union_bound(g: Graph, mds: int, rng: random.Random, trials: int = 3,
                cap: int = exact.DEFAULT_EXACT_CAP) -> list[Check]:
    out = []
    for _ in range(trials):
        sets = separated_sets(g, rng, rng.randint(1, 4))
        total = sum(exact.mds_subset_size(exact.DominationInstance.of(g, r, closed_neighborhood(g, r)), cap)
                    for r in sets)
        out.append(Check("union", total <= mds, f"{total} <= {mds} over {len(sets)} sets"))
    return out


def counting_bounds(g: Graph, mds: int, cfg: AlgorithmConfig | None = None) -> Check:
    X, I = enumerate_cut_sets(g, cfg)
    ok = len(X) <= ONE_CUT_FACTOR * mds and len(I) <= INTERESTING_FACTOR * mds
    return Check("counting", ok, f"|X|={len(X)} |I|={len(I)} mds={mds}")


def ratio_bounds(g: Graph, t: int, mds: int, cfg: AlgorithmConfig | None = None) -> list[Check]:
    three = algos.algo_3round(g)
    one = algos.algo1_mds(g, cfg)
    out = [
        Check("ratio_3round", len(three.chosen) <= (2 * t - 1) * mds,
              f"{len(three.chosen)} <= {2 * t - 1}*{mds}"),
        Check("rounds_3round", three.rounds.rounds_used == 3, f"rounds={three.rounds.rounds_used}"),
    ]
    if one.fallback_used:
        out.append(Check("ratio_algo1", None, "fallback voids the guarantee"))
    else:
        out.append(Check("ratio_algo1", len(one.chosen) <= ALGO1_RATIO * mds,
                         f"{len(one.chosen)} <= {ALGO1_RATIO}*{mds}"))
    return out


def validity(g: Graph, cfg: AlgorithmConfig | None = None) -> list[Check]:
    out = []
    for name in algos.ALGORITHMS:
        if name == "degree2" and not (g.n >= 3 and algos._is_tree(g)):
            continue
        res = algos.run_algorithm(name, g, cfg)
        out.append(Check(f"valid_{name}", algos.is_valid(res, g), f"|S|={len(res.chosen)}"))
    return out


def padded(g: Graph, extra: int) -> Graph:
    """``g`` plus a disjoint path on ``extra`` new, higher-numbered vertices."""
    edges = list(g.edges()) + [(g.n + i, g.n + i + 1) for i in range(extra - 1)]
    return Graph(g.n + extra, edges)


def locality(g: Graph, programs: Sequence[NodeProgram] | None = None, extra: int = 5) -> Check:
    """Each vertex's decision must be unchanged when unrelated vertices are
    added far away (the views are label-identical)."""
    programs = programs or (algos.THREE_ROUND_PROGRAM, algos.twin_cut_program(2, 2))
    big = padded(g, extra)
    bad = []
    for prog in programs:
        for v in g.vertices():
            if not verify_locality(prog, g, v, big, v):
                bad.append((prog.name, v))
        small, _ = run_local(g, prog)
        large, _ = run_local(big, prog)
        if any(small[v] != large[v] for v in g.vertices()):
            bad.append((prog.name, "run"))
    return Check("locality", not bad, f"{len(bad)} mismatches")


def check_graph(g: Graph, cfg: AlgorithmConfig | None = None, exact_cap: int = exact.DEFAULT_EXACT_CAP,
                minor_cap: int = gen.MINOR_CAP, seed: int = 0) -> list[Check]:
    """The full suite on one instance."""
    cfg = cfg or AlgorithmConfig()
    rng = random.Random(seed)
    out = validity(g, cfg) + [locality(g), oracle_agreement(g)]
    if g.n > exact_cap:
        return out + [Check("exact", None, f"n={g.n} above exact cap")]
    mds = exact.mds_size(g, exact_cap)
    out.append(ore_bound(g, mds))
    out.extend(union_bound(g, mds, rng, cap=exact_cap))
    if g.n > minor_cap or mds == 0:
        return out + [Check("certify", None, "no certified class")]
    t = gen.certify_class(g, minor_cap)
    out.append(Check("certify", True, f"t={t}"))
    out.extend(ratio_bounds(g, t, mds, cfg))
    out.append(counting_bounds(g, mds))
    return out


def ratio(chosen: int, opt: int) -> Fraction | None:
    return Fraction(chosen, opt) if opt else None
