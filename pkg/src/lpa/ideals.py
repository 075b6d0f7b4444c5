"""Ideals of L_K(E) named by generator data.

Every ideal is stored in the canonical form I(H,S) + sum <f_i(c_i)>, where the
c_i are distinct cycles without exits in the quotient graph E\\(H,S) and each
f_i is monic with nonzero constant term.  All decisions (containment,
semiprimeness, primeness) are made on this data; no algebra element is ever
written down.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Iterable

from .graph import Cycle, Graph, GraphError, cycle_info, is_cycle, is_downward_directed, up_set
from .hss import (
    AdmissiblePair,
    InvalidPair,
    _breaking,
    check_pair,
    closure,
    exit_free_cycles,
    enumerate_admissible_pairs,
    full_pair,
    pair_join,
    pair_leq,
    pair_meet,
)
from .poly import (
    FieldSpec,
    Poly,
    PolyError,
    field_from_document,
    gcd,
    irreducible_factors,
    is_irreducible,
    is_squarefree,
    lcm,
    parse_poly,
)

log = logging.getLogger(__name__)


class IdealError(ValueError):
    """Generator data that does not describe a canonical ideal."""


class UnsupportedShape(RuntimeError):
    pass


class ImproperIdeal(ValueError):
    pass


@dataclass(frozen=True)
class IdealRep:
    graph: Graph
    field: FieldSpec
    pair: AdmissiblePair
    polyparts: tuple[tuple[Cycle, Poly], ...] = ()

    @property
    def H(self) -> frozenset[str]:
        return self.pair.H

    @property
    def S(self) -> frozenset[str]:
        return self.pair.S

    def part(self, c: Cycle) -> Poly | None:
        for cycle, f in self.polyparts:
            if cycle == c:
                return f
        return None

    @property
    def is_proper(self) -> bool:
        return set(self.pair.H) != set(self.graph.vertices)

    def to_document(self) -> dict:
        doc = self.pair.to_document()
        doc["polyparts"] = [{"cycle": list(c.verts), "f": str(f)} for c, f in self.polyparts]
        doc["field"] = self.field.to_document()
        return doc

    def sort_key(self):
        return (self.pair.sort_key(), tuple((c.sort_key(), f.sort_key()) for c, f in self.polyparts))

    def __str__(self):
        parts = "".join(f" + <({f}) at {c}>" for c, f in self.polyparts)
        return f"I{self.pair}{parts}"


def _same_context(a: IdealRep, b: IdealRep) -> None:
    if a.graph != b.graph:
        raise IdealError("ideals live over different graphs")
    if a.field != b.field:
        raise IdealError(f"ideals live over different fields ({a.field} vs {b.field})")


def graded(g: Graph, field: FieldSpec, pair: AdmissiblePair) -> IdealRep:
    check_pair(g, pair)
    return IdealRep(g, field, pair)


def zero_ideal(g: Graph, field: FieldSpec) -> IdealRep:
    return IdealRep(g, field, AdmissiblePair(frozenset(), frozenset()))


def canonical(g: Graph, field: FieldSpec, pair: AdmissiblePair, parts: dict[Cycle, Poly],
              cap: int | None = None) -> IdealRep:
    """Bring generator data into canonical form.

    Parts on cycles inside H are absorbed.  A unit part puts the cycle's
    vertices into the ideal, so the graded part grows to the join with the
    closure of those vertices, which may absorb further parts.
    """
    check_pair(g, pair)
    parts = {c: f.monic() for c, f in parts.items()}
    while True:
        parts = {c: f for c, f in parts.items() if not c.vertex_set <= pair.H}
        units = sorted((c for c, f in parts.items() if f.is_constant), key=Cycle.sort_key)
        if not units:
            break
        c = units[0]
        del parts[c]
        pair = pair_join(g, pair, AdmissiblePair(closure(g, c.verts), frozenset()), cap)
    allowed = set(exit_free_cycles(g, pair))
    for c, f in parts.items():
        if c not in allowed:
            raise IdealError(f"cycle {c} is not a cycle without exits in E\\{pair}")
        if not f.constant_term():
            raise IdealError(f"polynomial {f} at cycle {c} has zero constant term")
    ordered = tuple(sorted(parts.items(), key=lambda t: t[0].sort_key()))
    return IdealRep(g, field, pair, ordered)


def validate(g: Graph, raw: dict, field: FieldSpec | None = None) -> IdealRep:
    """Read an ideal document ``{"H", "S", "polyparts", "field"}`` into canonical form."""
    if not isinstance(raw, dict):
        raise IdealError("ideal document must be a JSON object")
    doc_field = field_from_document(raw["field"]) if "field" in raw else None
    if field is not None and doc_field is not None and field != doc_field:
        raise IdealError(f"document field {doc_field} disagrees with requested field {field}")
    field = field or doc_field or field_from_document(None)
    try:
        pair = AdmissiblePair(g.check_vertices(raw.get("H", [])), g.check_vertices(raw.get("S", [])))
        check_pair(g, pair)
    except (GraphError, InvalidPair) as exc:
        raise IdealError(str(exc)) from None
    parts: dict[Cycle, Poly] = {}
    for i, item in enumerate(raw.get("polyparts", [])):
        if not isinstance(item, dict) or "cycle" not in item or "f" not in item:
            raise IdealError(f"polyparts[{i}] needs fields 'cycle' and 'f'")
        verts = item["cycle"]
        try:
            ok = is_cycle(g, verts)
        except GraphError as exc:
            raise IdealError(f"polyparts[{i}]: {exc}") from None
        if not ok:
            raise IdealError(f"polyparts[{i}]: {verts} is not a cycle of the graph")
        c = Cycle.from_sequence(verts)
        try:
            f = parse_poly(item["f"], field)
        except PolyError as exc:
            raise IdealError(f"polyparts[{i}]: {exc}") from None
        if f.is_zero:
            raise IdealError(f"polyparts[{i}]: zero polynomial")
        if not f.constant_term():
            raise IdealError(f"polyparts[{i}]: {f} has zero constant term")
        if c in parts or any(c.vertex_set & d.vertex_set for d in parts):
            raise IdealError(f"polyparts[{i}]: cycle {c} overlaps another summand")
        if c.vertex_set <= pair.H:
            log.warning("dropping summand at %s: its vertices already lie in H", c)
            continue
        parts[c] = f
    return canonical(g, field, pair, parts)


# -- graded part and semiprimeness ------------------------------------------------


def is_graded(ideal: IdealRep) -> bool:
    return not ideal.polyparts


def graded_part(ideal: IdealRep) -> IdealRep:
    return IdealRep(ideal.graph, ideal.field, ideal.pair)


def is_semiprime(ideal: IdealRep) -> bool:
    # graded ideals are semiprime; otherwise every polynomial part must be square-free
    return all(is_squarefree(f) for _, f in ideal.polyparts)


# -- primeness ---------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeWitness:
    case: int
    pair: AdmissiblePair
    u: str | None = None
    cycle: Cycle | None = None
    f: Poly | None = None

    prime = True

    def to_document(self) -> dict:
        doc = {"prime": True, "case": self.case, "H": sorted(self.pair.H), "S": sorted(self.pair.S)}
        if self.u is not None:
            doc["u"] = self.u
        if self.cycle is not None:
            doc["cycle"] = list(self.cycle.verts)
            doc["f"] = str(self.f)
        return doc


@dataclass(frozen=True)
class NotPrime:
    reason: str

    prime = False

    def to_document(self) -> dict:
        return {"prime": False, "reason": self.reason}


def classify_prime(g: Graph, ideal: IdealRep, field: FieldSpec | None = None) -> PrimeWitness | NotPrime:
    """Match ``ideal`` against the three kinds of prime ideal.

    Raises :class:`ImproperIdeal` for the whole algebra and lets
    :class:`~lpa.poly.UnsupportedError` escape when irreducibility over Q
    cannot be decided.
    """
    if ideal.graph != g:
        raise IdealError("ideal belongs to a different graph")
    if field is not None and field != ideal.field:
        raise IdealError(f"ideal is over {ideal.field}, not {field}")
    if not ideal.is_proper:
        raise ImproperIdeal("the whole algebra is not a prime ideal")
    h, s = ideal.H, ideal.S
    b = _breaking(g, h)
    rest = frozenset(g.vertices) - h
    if not ideal.polyparts:
        if s == b:
            if is_downward_directed(g, rest):
                return PrimeWitness(1, ideal.pair)
            return NotPrime("S = B_H but E^0 \\ H is not downward directed")
        missing = b - s
        if len(missing) != 1:
            return NotPrime(f"B_H \\ S has {len(missing)} vertices; a prime needs S = B_H or one fewer")
        (u,) = missing
        if rest != up_set(g, u):
            return NotPrime(f"E^0 \\ H differs from the vertices above the breaking vertex {u}")
        return PrimeWitness(2, ideal.pair, u=u)
    if len(ideal.polyparts) > 1:
        return NotPrime("more than one polynomial summand")
    if s != b:
        return NotPrime("a non-graded prime needs S = B_H")
    (c, f), = ideal.polyparts
    info = cycle_info(g, c)
    if info is None or not info.is_wk:
        return NotPrime(f"cycle {c} is not a WK cycle")
    u = c.base
    if rest != up_set(g, u):
        return NotPrime(f"E^0 \\ H differs from the vertices above the cycle vertex {u}")
    if not is_irreducible(f):
        return NotPrime(f"{f} is reducible over {ideal.field}")
    return PrimeWitness(3, ideal.pair, u=u, cycle=c, f=f)


def is_prime(g: Graph, ideal: IdealRep) -> bool:
    return ideal.is_proper and classify_prime(g, ideal).prime


# -- lattice operations ------------------------------------------------------------


def contains(a: IdealRep, b: IdealRep) -> bool:
    """``b`` is a subset of ``a``."""
    _same_context(a, b)
    if not pair_leq(b.pair, a.pair):
        return False
    for c, g_ in b.polyparts:
        if c.vertex_set <= a.H:
            continue
        f = a.part(c)
        if f is None or not f.divides(g_):
            return False
    return True


def ideal_sum(a: IdealRep, b: IdealRep, cap: int | None = None) -> IdealRep:
    _same_context(a, b)
    g = a.graph
    pair = pair_join(g, a.pair, b.pair, cap)
    parts = dict(a.polyparts)
    for c, f in b.polyparts:
        parts[c] = gcd(parts[c], f) if c in parts else f
    return canonical(g, a.field, pair, parts, cap)


def _component(ideal: IdealRep, c: Cycle) -> Poly:
    """Generator of {h : h(c) in ideal} in K[x]: 1 if c lies in H, 0 if nothing."""
    if c.vertex_set <= ideal.H:
        return Poly.const(ideal.field, 1)
    f = ideal.part(c)
    return f if f is not None else Poly(ideal.field)


def intersect(a: IdealRep, b: IdealRep, cap: int | None = None) -> IdealRep:
    """Intersection of two canonical ideals.

    The graded part of the intersection is the meet of the graded parts.  At
    each cycle the surviving polynomial is the lcm of the two components.
    Should a surviving cycle fail to be exit-free over the meet, the shape is
    reported as unsupported instead of being guessed.
    """
    _same_context(a, b)
    g = a.graph
    pair = pair_meet(g, a.pair, b.pair, cap)
    cycles = {c for c, _ in a.polyparts} | {c for c, _ in b.polyparts}
    parts = {}
    for c in cycles:
        h = lcm(_component(a, c), _component(b, c))
        if not h.is_zero and not c.vertex_set <= pair.H:
            parts[c] = h
    allowed = set(exit_free_cycles(g, pair))
    bad = [c for c in parts if c not in allowed]
    if bad:
        raise UnsupportedShape(f"intersection leaves a part on {bad[0]}, which has an exit in E\\{pair}")
    return canonical(g, a.field, pair, parts, cap)


def intersect_all(ideals: Iterable[IdealRep], cap: int | None = None) -> IdealRep:
    return reduce(lambda x, y: intersect(x, y, cap), ideals)


# -- semiprimeness by definition -----------------------------------------------------


def primes_above(g: Graph, ideal: IdealRep, cap: int | None = None) -> list[IdealRep]:
    """The graded primes containing ``ideal`` and the non-graded primes at factors of its parts.

    A non-graded prime on a cycle where ``ideal`` has no part contains the
    graded prime below it, which is already in the list, so those infinite
    families never change the intersection.
    """
    field = ideal.field
    out = []
    for pair in enumerate_admissible_pairs(g, cap):
        p = IdealRep(g, field, pair)
        if p.is_proper and classify_prime(g, p).prime and contains(p, ideal):
            out.append(p)
    everything = frozenset(g.vertices)
    for c, f in ideal.polyparts:
        h = everything - up_set(g, c.base)
        pair = AdmissiblePair(h, _breaking(g, h))
        for q, _ in irreducible_factors(f):
            try:
                p = canonical(g, field, pair, {c: q}, cap)
            except IdealError:
                continue
            if classify_prime(g, p).prime and contains(p, ideal):
                out.append(p)
    return out


def semiprime_oracle(g: Graph, ideal: IdealRep, degree_bound: int, cap: int | None = None) -> bool:
    """Decide semiprimeness from the definition: is ``ideal`` the intersection of the primes above it?"""
    if ideal.field.is_rational:
        raise ValueError("the oracle needs a prime field, where factorization is complete")
    if any(f.degree > degree_bound for _, f in ideal.polyparts):
        raise ValueError(f"a polynomial part exceeds the degree bound {degree_bound}")
    if not ideal.is_proper:
        raise ImproperIdeal("the whole algebra is not an intersection of primes")
    primes = primes_above(g, ideal, cap)
    if not primes:
        return False
    return intersect_all(primes, cap) == ideal


def enumerate_ideals(g: Graph, field: FieldSpec, polys: list[Poly], cap: int | None = None) -> list[IdealRep]:
    """Every canonical ideal whose parts are drawn from ``polys`` (all monic, f(0) != 0)."""
    out = []
    for pair in enumerate_admissible_pairs(g, cap):
        cycles = exit_free_cycles(g, pair)
        for choice in product([None, *polys], repeat=len(cycles)):
            parts = tuple((c, f) for c, f in zip(cycles, choice) if f is not None)
            out.append(IdealRep(g, field, pair, parts))
    return out


def whole(g: Graph, field: FieldSpec) -> IdealRep:
    return IdealRep(g, field, full_pair(g))
