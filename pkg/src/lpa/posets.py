"""Finite posets: greatest lower bounds, the GLB/DC/DD/KAP properties, and the graph E_P."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable

from .graph import OMEGA, Graph

DEFAULT_BOUND = 12


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class FinPoset:
    """A finite strict order; ``lt`` is transitively closed on construction."""

    elements: tuple[str, ...]
    lt: frozenset[tuple[str, str]] = frozenset()
    _below: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate poset elements")
        known = set(self.elements)
        below: dict[str, set[str]] = {e: set() for e in self.elements}
        for a, b in self.lt:
            if a not in known or b not in known:
                raise PosetError(f"relation {a} < {b} mentions an unknown element")
            below[b].add(a)
        # transitive closure, Floyd-Warshall style
        for k in self.elements:
            for x in self.elements:
                if k in below[x]:
                    below[x] |= below[k]
        for x in self.elements:
            if x in below[x]:
                raise PosetError(f"the relation has a cycle through {x}")
        closed = frozenset((a, b) for b in self.elements for a in below[b])
        object.__setattr__(self, "lt", closed)
        object.__setattr__(self, "_below", {x: frozenset(s) for x, s in below.items()})

    @classmethod
    def from_leq(cls, elements: Iterable[str], leq: Callable[[str, str], bool]) -> FinPoset:
        elements = tuple(elements)
        return cls(elements, frozenset((a, b) for a in elements for b in elements if a != b and leq(a, b)))

    def less(self, a: str, b: str) -> bool:
        return a in self._below[b]

    def leq(self, a: str, b: str) -> bool:
        return a == b or a in self._below[b]

    def down(self, x: str) -> frozenset[str]:
        return self._below[x] | {x}

    def up(self, x: str) -> frozenset[str]:
        return frozenset(y for y in self.elements if self.leq(x, y))

    def covers(self) -> list[tuple[str, str]]:
        out = []
        for a, b in sorted(self.lt):
            if not any(self.less(a, t) and self.less(t, b) for t in self.elements):
                out.append((a, b))
        return out

    def is_chain(self) -> bool:
        return all(self.leq(a, b) or self.leq(b, a) for a, b in combinations(self.elements, 2))

    def to_document(self) -> dict:
        return {"elements": list(self.elements), "lt": [list(p) for p in sorted(self.covers())]}

    def __len__(self):
        return len(self.elements)


def load_poset(text: str) -> FinPoset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PosetError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    return poset_from_document(doc)


def poset_from_document(doc) -> FinPoset:
    if not isinstance(doc, dict) or not isinstance(doc.get("elements"), list):
        raise PosetError("poset document needs a list field 'elements'")
    for e in doc["elements"]:
        if not isinstance(e, str) or not e:
            raise PosetError(f"poset elements must be nonempty strings, got {e!r}")
    lt = []
    for i, rel in enumerate(doc.get("lt", [])):
        if not isinstance(rel, list) or len(rel) != 2:
            raise PosetError(f"lt[{i}]: expected [smaller, larger]")
        lt.append(tuple(rel))
    return FinPoset(tuple(doc["elements"]), frozenset(lt))


# -- bounds ------------------------------------------------------------------------


def lower_bounds(p: FinPoset, s: Iterable[str]) -> list[str]:
    s = list(s)
    return [x for x in p.elements if all(p.leq(x, y) for y in s)]


def glb(p: FinPoset, s: Iterable[str]) -> str | None:
    """The greatest lower bound of a nonempty subset, or None."""
    s = list(s)
    if not s:
        raise PosetError("glb of the empty set is not considered")
    lbs = lower_bounds(p, s)
    for x in lbs:
        if all(p.leq(y, x) for y in lbs):
            return x
    return None


def least_element(p: FinPoset, s: Iterable[str]) -> str | None:
    s = list(s)
    for x in s:
        if all(p.leq(x, y) for y in s):
            return x
    return None


def is_downward_directed(p: FinPoset, s: Iterable[str]) -> bool:
    s = list(s)
    if not s:
        return False
    return all(any(p.leq(r, a) and p.leq(r, b) for r in s) for a, b in combinations(s, 2))


def downward_directed_subsets(p: FinPoset, within: Iterable[str] | None = None,
                              bound: int = DEFAULT_BOUND) -> list[tuple[str, ...]]:
    pool = tuple(p.elements if within is None else within)
    if len(pool) > bound:
        raise PosetError(f"{len(pool)} elements exceed the exhaustive bound {bound}")
    return [s for k in range(1, len(pool) + 1) for s in combinations(pool, k)
            if is_downward_directed(p, s)]


def r_set(p: FinPoset, bound: int = DEFAULT_BOUND) -> list[str]:
    """Elements that are not the glb of a downward directed subset lacking a least element."""
    excluded = set()
    for s in downward_directed_subsets(p, bound=bound):
        if least_element(p, s) is None:
            m = glb(p, s)
            if m is not None:
                excluded.add(m)
    return [x for x in p.elements if x not in excluded]


# -- Kaplansky pairs -------------------------------------------------------------------


def _minimal(p: FinPoset, xs: list[str]) -> list[str]:
    return [x for x in xs if not any(p.less(y, x) for y in xs)]


def _maximal(p: FinPoset, xs: list[str]) -> list[str]:
    return [x for x in xs if not any(p.less(x, y) for y in xs)]


def kaplansky_pair(p: FinPoset, a: str, b: str) -> tuple[str, str]:
    """A cover ``lo < hi`` with ``a <= lo < hi <= b``.

    Picks an element ``c`` just above ``a`` (the stand-in for an element of
    b outside a), a maximal ``lo`` in [a, b) not above ``c``, and a minimal
    ``hi`` in [lo, b] above ``c``.
    """
    if not p.less(a, b):
        raise PosetError(f"{a} is not strictly below {b}")
    interval = [x for x in p.elements if p.less(a, x) and p.leq(x, b)]
    c = _minimal(p, interval)[0]
    lows = [x for x in p.elements if p.leq(a, x) and p.less(x, b) and not p.leq(c, x)]
    lo = _maximal(p, lows)[0]
    highs = [x for x in p.elements if p.leq(lo, x) and p.leq(c, x) and p.leq(x, b)]
    hi = _minimal(p, highs)[0]
    if any(p.less(lo, t) and p.less(t, hi) for t in p.elements):
        raise AssertionError(f"({lo}, {hi}) is not a cover")
    return lo, hi


# -- the four properties ------------------------------------------------------------------


@dataclass
class PropertyReport:
    GLB: bool
    DC: bool
    DD: bool
    KAP: bool
    witnesses: dict = field(default_factory=dict)

    def to_document(self) -> dict:
        return {"GLB": self.GLB, "DC": self.DC, "DD": self.DD, "KAP": self.KAP,
                "witnesses": self.witnesses}


def check_properties(p: FinPoset, bound: int = DEFAULT_BOUND) -> PropertyReport:
    """Evaluate GLB, DC, DD and KAP literally over every downward directed subset."""
    dd = downward_directed_subsets(p, bound=bound)
    glbs = {s: glb(p, s) for s in dd}
    rp = r_set(p, bound)
    report = PropertyReport(True, True, True, True)

    for s, m in glbs.items():
        if m is None:
            report.GLB = False
            report.witnesses.setdefault("GLB", list(s))
            break

    for s, m in glbs.items():
        if m is None:
            continue
        bad = [x for x in rp if p.leq(m, x) and not any(p.leq(y, x) for y in s)]
        if bad:
            report.DC = False
            report.witnesses.setdefault("DC", {"S": list(s), "p": bad[0]})
            break

    rp_glbs = {glb(p, t) for t in downward_directed_subsets(p, within=rp, bound=bound)}
    for s, m in glbs.items():
        if m is not None and m not in rp_glbs:
            report.DD = False
            report.witnesses.setdefault("DD", list(s))
            break

    for a, b in sorted(p.lt):
        try:
            kaplansky_pair(p, a, b)
        except AssertionError:
            report.KAP = False
            report.witnesses.setdefault("KAP", [a, b])
            break
    return report


# -- realization ------------------------------------------------------------------------------


def realize(p: FinPoset) -> Graph:
    """E_P: a vertex per element and infinitely many edges from each element to each smaller one."""
    return Graph.build(p.elements, [(b, a, OMEGA) for a, b in sorted(p.lt)])


def realization_map(p: FinPoset) -> dict[str, tuple[frozenset[str], frozenset[str]]]:
    """Element q maps to the pair (H, {}) with H the elements not above q."""
    return {q: (frozenset(x for x in p.elements if not p.leq(q, x)), frozenset()) for q in p.elements}


def verify_realization(p: FinPoset, cap: int | None = None) -> bool:
    """Check that the prime spectrum of L(E_P) is order-isomorphic to P via :func:`realization_map`."""
    from .spectrum import compute_spec

    spec = compute_spec(realize(p), cap)
    if spec.families():
        return False
    nodes = {(n.pair.H, n.pair.S): n for n in spec.nodes}
    image = realization_map(p)
    if set(image.values()) != set(nodes) or len(set(image.values())) != len(p.elements):
        return False
    for a in p.elements:
        for b in p.elements:
            if p.leq(a, b) != spec.leq(nodes[image[a]], nodes[image[b]]):
                return False
    return True


# -- enumeration ---------------------------------------------------------------------------------


def _canonical_form(n: int, rel: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        form = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or form < best:
            best = form
    return best


def posets_up_to_iso(n: int) -> list[FinPoset]:
    """One representative per isomorphism class of posets on n elements.

    Elements are added in linear-extension order, so each new element is
    maximal and its strict down-set is any down-closed subset of the old ones.
    """
    labeled = [frozenset()]
    for k in range(1, n):
        grown = []
        for rel in labeled:
            below = {x: {a for a, b in rel if b == x} for x in range(k)}
            for size in range(k + 1):
                for d in combinations(range(k), size):
                    if all(below[x] <= set(d) for x in d):
                        grown.append(rel | {(x, k) for x in d})
        labeled = grown
    seen = {}
    for rel in labeled:
        seen.setdefault(_canonical_form(n, rel), rel)
    names = [f"p{i}" for i in range(n)]
    return [FinPoset(tuple(names), frozenset((names[a], names[b]) for a, b in rel))
            for _, rel in sorted(seen.items())]
