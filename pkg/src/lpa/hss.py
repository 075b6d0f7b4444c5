"""Hereditary saturated sets, breaking vertices, admissible pairs and quotient graphs."""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import INFINITE_EMITTER, OMEGA, REGULAR, Cycle, Graph, add_mults, simple_cycles, tree

DEFAULT_CAP = 4096


class CapExceeded(RuntimeError):
    """An enumeration produced more objects than the caller allowed."""


class InvalidPair(ValueError):
    pass


def default_cap() -> int:
    raw = os.environ.get("LPA_CAP")
    return int(raw) if raw else DEFAULT_CAP


def vset_key(vs: Iterable[str]):
    vs = sorted(vs)
    return (len(vs), tuple(vs))


@dataclass(frozen=True)
class AdmissiblePair:
    """Names the graded ideal I(H, S); ``S`` must be a subset of B_H."""

    H: frozenset[str]
    S: frozenset[str] = frozenset()

    def sort_key(self):
        return (vset_key(self.H), vset_key(self.S))

    def to_document(self) -> dict:
        return {"H": sorted(self.H), "S": sorted(self.S)}

    def __str__(self):
        h = "{" + ",".join(sorted(self.H)) + "}"
        s = "{" + ",".join(sorted(self.S)) + "}"
        return f"({h},{s})"


def pair_from_document(g: Graph, doc) -> AdmissiblePair:
    if not isinstance(doc, dict) or "H" not in doc:
        raise InvalidPair("pair document needs field 'H'")
    pair = AdmissiblePair(g.check_vertices(doc["H"]), g.check_vertices(doc.get("S", [])))
    check_pair(g, pair)
    return pair


# -- hereditary saturated sets ------------------------------------------------


def is_hereditary(g: Graph, h: Iterable[str]) -> bool:
    h = g.check_vertices(h)
    return all(tree(g, v) <= h for v in h)


def is_saturated(g: Graph, h: Iterable[str]) -> bool:
    h = g.check_vertices(h)
    for v in g.vertices:
        if v in h or g.vertex_class(v) != REGULAR:
            continue
        if set(g.successors(v)) <= h:
            return False
    return True


def is_hss(g: Graph, h: Iterable[str]) -> bool:
    h = g.check_vertices(h)
    return is_hereditary(g, h) and is_saturated(g, h)


def closure(g: Graph, xs: Iterable[str]) -> frozenset[str]:
    """Smallest hereditary saturated set containing ``xs``."""
    h = set()
    for x in g.check_vertices(xs):
        h |= tree(g, x)
    regular = [v for v in g.vertices if g.vertex_class(v) == REGULAR]
    changed = True
    while changed:
        changed = False
        for v in regular:
            if v not in h and set(g.successors(v)) <= h:
                # a saturated vertex drags its own tree along, which is
                # already inside h
                h.add(v)
                changed = True
    return frozenset(h)


def enumerate_hss(g: Graph, cap: int | None = None) -> list[frozenset[str]]:
    """All hereditary saturated subsets, sorted by (size, members).

    Every HSS is reached from the empty set by repeatedly closing up one
    extra vertex, so the search only visits actual HSS.
    """
    cap = default_cap() if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    key = ("hss", cap)
    if key in g._cache:
        return g._cache[key]
    start = closure(g, ())
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for h in frontier:
            for v in g.vertices:
                if v in h:
                    continue
                h2 = closure(g, h | {v})
                if h2 not in found:
                    found.add(h2)
                    if len(found) > cap:
                        raise CapExceeded(f"more than {cap} hereditary saturated sets")
                    nxt.append(h2)
        frontier = nxt
    result = sorted(found, key=vset_key)
    g._cache[key] = result
    return result


# -- breaking vertices and admissible pairs ------------------------------------


def breaking_vertices(g: Graph, h: Iterable[str]) -> frozenset[str]:
    """Infinite emitters outside ``h`` sending finitely many, but some, edges outside ``h``."""
    h = g.check_vertices(h)
    if not is_hss(g, h):
        raise InvalidPair(f"{sorted(h)} is not hereditary and saturated")
    return _breaking(g, h)


def _breaking(g: Graph, h: frozenset[str]) -> frozenset[str]:
    out = set()
    for w in g.vertices:
        if w in h or g.vertex_class(w) != INFINITE_EMITTER:
            continue
        n = add_mults(m for x, m in g.successors(w).items() if x not in h)
        if 0 < n < OMEGA:
            out.add(w)
    return frozenset(out)


def check_pair(g: Graph, pair: AdmissiblePair) -> None:
    if not is_hss(g, pair.H):
        raise InvalidPair(f"H={sorted(pair.H)} is not hereditary and saturated")
    extra = pair.S - _breaking(g, pair.H)
    if extra:
        raise InvalidPair(f"S contains non-breaking vertices {sorted(extra)}")


def enumerate_admissible_pairs(g: Graph, cap: int | None = None) -> list[AdmissiblePair]:
    cap = default_cap() if cap is None else cap
    key = ("pairs", cap)
    if key in g._cache:
        return g._cache[key]
    pairs = []
    for h in enumerate_hss(g, cap):
        b = sorted(_breaking(g, h))
        for k in range(len(b) + 1):
            for s in combinations(b, k):
                pairs.append(AdmissiblePair(h, frozenset(s)))
                if len(pairs) > cap:
                    raise CapExceeded(f"more than {cap} admissible pairs")
    pairs.sort(key=AdmissiblePair.sort_key)
    g._cache[key] = pairs
    return pairs


def pair_leq(a: AdmissiblePair, b: AdmissiblePair) -> bool:
    """I(a) is contained in I(b)."""
    return a.H <= b.H and a.S <= (b.H | b.S)


def pair_join(g: Graph, a: AdmissiblePair, b: AdmissiblePair, cap: int | None = None) -> AdmissiblePair:
    """Least admissible pair above both, found inside the enumerated lattice."""
    ups = [p for p in enumerate_admissible_pairs(g, cap) if pair_leq(a, p) and pair_leq(b, p)]
    least = [p for p in ups if all(pair_leq(p, q) for q in ups)]
    if len(least) != 1:
        raise AssertionError(f"pair lattice has no unique join of {a} and {b}")
    return least[0]


def pair_meet(g: Graph, a: AdmissiblePair, b: AdmissiblePair, cap: int | None = None) -> AdmissiblePair:
    """Greatest admissible pair below both, found inside the enumerated lattice."""
    downs = [p for p in enumerate_admissible_pairs(g, cap) if pair_leq(p, a) and pair_leq(p, b)]
    greatest = [p for p in downs if all(pair_leq(q, p) for q in downs)]
    if len(greatest) != 1:
        raise AssertionError(f"pair lattice has no unique meet of {a} and {b}")
    return greatest[0]


def full_pair(g: Graph) -> AdmissiblePair:
    return AdmissiblePair(frozenset(g.vertices), frozenset())


# -- quotient graphs ------------------------------------------------------------


@dataclass(frozen=True)
class QuotientGraph:
    """The graph E\\(H,S); ``graph`` is None for the improper pair (E^0, {})."""

    graph: Graph | None
    primed: dict  # primed vertex name -> original vertex
    primed_edges: dict  # (src, primed dst) -> original (src, dst)

    @property
    def is_empty(self) -> bool:
        return self.graph is None


EMPTY = QuotientGraph(None, {}, {})


def quotient(g: Graph, pair: AdmissiblePair) -> QuotientGraph:
    check_pair(g, pair)
    return _quotient(g, pair)


def _quotient(g: Graph, pair: AdmissiblePair) -> QuotientGraph:
    cache = g._cache.setdefault("quotient", {})
    if pair in cache:
        return cache[pair]
    h = pair.H
    rest = [v for v in g.vertices if v not in h]
    if not rest:
        cache[pair] = EMPTY
        return EMPTY
    dangling = sorted(_breaking(g, h) - pair.S)
    names = set(g.vertices)
    prime_of = {}
    for v in dangling:
        name = v + "'"
        while name in names:
            name += "'"
        names.add(name)
        prime_of[v] = name
    edges = []
    primed_edges = {}
    for (u, v), m in g.mult.items():
        if v in h:
            continue
        edges.append((u, v, m))
        if v in prime_of:
            edges.append((u, prime_of[v], m))
            primed_edges[(u, prime_of[v])] = (u, v)
    qg = Graph.build(rest + list(prime_of.values()), edges)
    result = QuotientGraph(qg, {p: v for v, p in prime_of.items()}, primed_edges)
    cache[pair] = result
    return result


def exit_free_cycles(g: Graph, pair: AdmissiblePair) -> list[Cycle]:
    """Cycles of E\\(H,S) without exits (primed vertices are sinks, so these are cycles of E)."""
    q = _quotient(g, pair)
    if q.is_empty:
        return []
    return [info.cycle for info in simple_cycles(q.graph) if not info.has_exit]

