"""The prime spectrum of L_K(E) as a finite poset.

Graded primes are ordinary nodes.  The non-graded primes sitting on a WK
cycle c form an infinite antichain {I(H, B_H) + <f(c)> : f irreducible};
each such antichain is stored as one symbolic ``family`` node.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .graph import Cycle, Graph, is_acyclic, simple_cycles, up_set
from .hss import AdmissiblePair, _breaking, _quotient, enumerate_admissible_pairs, exit_free_cycles, pair_leq
from .ideals import IdealRep, canonical, classify_prime
from .poly import FieldSpec, Poly, laurent_irreducibles
from .posets import FinPoset
from .posets import kaplansky_pair as _poset_kaplansky_pair

GRADED = "graded"
FAMILY = "family"


@dataclass(frozen=True)
class SpecNode:
    kind: str
    pair: AdmissiblePair
    case: int
    u: str | None = None
    cycle: Cycle | None = None

    @property
    def is_family(self) -> bool:
        return self.kind == FAMILY

    @property
    def key(self) -> str:
        text = str(self.pair)
        if self.cycle is not None:
            text += "+<f(" + ",".join(self.cycle.verts) + ")>"
        return text

    def sort_key(self):
        return (self.pair.sort_key(), self.is_family, self.cycle.sort_key() if self.cycle else ())

    def ideal(self, g: Graph, field: FieldSpec, f: Poly | None = None) -> IdealRep:
        """The graded prime itself, or the family instance at ``f``."""
        if not self.is_family:
            return IdealRep(g, field, self.pair)
        if f is None:
            raise ValueError("a family node needs a polynomial to become an ideal")
        return canonical(g, field, self.pair, {self.cycle: f})

    def to_document(self) -> dict:
        doc = {"id": self.key, "kind": self.kind, "case": self.case, **self.pair.to_document()}
        if self.u is not None:
            doc["u"] = self.u
        if self.cycle is not None:
            doc["cycle"] = list(self.cycle.verts)
        return doc


def node_leq(a: SpecNode, b: SpecNode) -> bool:
    """Set inclusion lifted to family nodes.

    A family lies below ``b`` when every instance does, which forces its
    cycle into the graded part of ``b``; a node lies below a family when it
    lies below some instance, which only needs the graded parts to compare.
    """
    if a == b:
        return True
    if not pair_leq(a.pair, b.pair):
        return False
    if a.is_family:
        return a.cycle.vertex_set <= b.pair.H
    return True


@dataclass(frozen=True)
class SpecPoset:
    graph: Graph
    nodes: tuple[SpecNode, ...]

    def leq(self, a: SpecNode, b: SpecNode) -> bool:
        return node_leq(a, b)

    def less(self, a: SpecNode, b: SpecNode) -> bool:
        return a != b and node_leq(a, b)

    def graded(self) -> list[SpecNode]:
        return [n for n in self.nodes if not n.is_family]

    def families(self) -> list[SpecNode]:
        return [n for n in self.nodes if n.is_family]

    def node(self, key: str) -> SpecNode:
        for n in self.nodes:
            if n.key == key:
                return n
        raise KeyError(key)

    @cached_property
    def poset(self) -> FinPoset:
        return FinPoset.from_leq([n.key for n in self.nodes],
                                 lambda a, b: node_leq(self.node(a), self.node(b)))

    def to_document(self, field: FieldSpec | None = None, max_degree: int | None = None) -> dict:
        nodes = []
        for n in self.nodes:
            doc = n.to_document()
            if n.is_family:
                # any field has infinitely many irreducibles, so a family is never a single prime
                doc["internal_antichain"] = True
                if field is not None and max_degree is not None:
                    doc["instances"] = [str(f) for f in family_polys(field, max_degree)]
            nodes.append(doc)
        return {
            "nodes": nodes,
            "leq": [[int(self.leq(a, b)) for b in self.nodes] for a in self.nodes],
            "covers": [[a.key, b.key] for a, b in covers(self)],
        }


def compute_spec(g: Graph, cap: int | None = None) -> SpecPoset:
    """All graded primes plus one family node per WK cycle."""
    nodes = []
    for pair in enumerate_admissible_pairs(g, cap):
        if set(pair.H) == set(g.vertices):
            continue
        w = classify_prime(g, IdealRep(g, FieldSpec(), pair))
        if w.prime:
            nodes.append(SpecNode(GRADED, pair, w.case, w.u))
    everything = frozenset(g.vertices)
    for info in simple_cycles(g):
        if not info.is_wk:
            continue
        c = info.cycle
        h = everything - up_set(g, c.base)
        pair = AdmissiblePair(h, _breaking(g, h))
        if c not in exit_free_cycles(g, pair):
            raise AssertionError(f"WK cycle {c} has an exit over {pair}")
        nodes.append(SpecNode(FAMILY, pair, 3, c.base, c))
    nodes.sort(key=SpecNode.sort_key)
    return SpecPoset(g, tuple(nodes))


def family_polys(field: FieldSpec, max_degree: int) -> list[Poly]:
    return laurent_irreducibles(field, max_degree)


def family_instances(g: Graph, node: SpecNode, field: FieldSpec, max_degree: int) -> list[IdealRep]:
    """Instances of a family node at every irreducible of degree at most ``max_degree``."""
    if not node.is_family:
        raise ValueError("only family nodes have instances")
    return [node.ideal(g, field, f) for f in family_polys(field, max_degree)]


def covers(spec: SpecPoset) -> list[tuple[SpecNode, SpecNode]]:
    out = []
    for a in spec.nodes:
        for b in spec.nodes:
            if spec.less(a, b) and not any(spec.less(a, t) and spec.less(t, b) for t in spec.nodes):
                out.append((a, b))
    return out


def kaplansky_pair(spec: SpecPoset, a: SpecNode, b: SpecNode) -> tuple[SpecNode, SpecNode]:
    if not spec.less(a, b):
        raise ValueError(f"{a.key} is not strictly below {b.key}")
    lo, hi = _poset_kaplansky_pair(spec.poset, a.key, b.key)
    return spec.node(lo), spec.node(hi)


def _chains(spec: SpecPoset):
    """Every nonempty chain, each listed bottom-up."""
    def grow(chain):
        yield chain
        for n in spec.nodes:
            if spec.less(chain[-1], n):
                yield from grow(chain + (n,))
    for n in spec.nodes:
        yield from grow((n,))


def union_prime_scan(spec: SpecPoset) -> list[tuple[SpecNode, ...]]:
    """Chains whose union is not one of their members (so possibly not prime).

    In a finite spectrum every chain has a largest member, which is its
    union, so the list is always empty.
    """
    bad = []
    for chain in _chains(spec):
        if not any(all(spec.leq(m, top) for m in chain) for top in chain):
            bad.append(chain)
    return bad


def chain_meets_are_prime(spec: SpecPoset) -> bool:
    """The meet of any chain of graded primes is again a graded prime node."""
    graded = spec.graded()
    for chain in _chains(SpecPoset(spec.graph, tuple(graded))):
        low = [m for m in chain if all(spec.leq(m, x) for x in chain)]
        if not low or low[0] not in graded:
            return False
    return True


@dataclass
class RegularityReport:
    regular: bool
    witnesses: list[dict]

    @property
    def consistent(self) -> bool:
        return self.regular == all(w["acyclic"] for w in self.witnesses)

    def to_document(self) -> dict:
        return {"regular": self.regular, "consistent": self.consistent, "witnesses": self.witnesses}


def regularity_report(g: Graph, cap: int | None = None) -> RegularityReport:
    """Regularity of L(E) (E acyclic) set beside the acyclicity of each graded prime quotient."""
    witnesses = []
    for node in compute_spec(g, cap).graded():
        q = _quotient(g, node.pair)
        witnesses.append({"prime": node.key, **node.pair.to_document(), "acyclic": is_acyclic(q.graph)})
    return RegularityReport(is_acyclic(g), witnesses)


def is_totally_ordered(spec: SpecPoset) -> bool:
    """Families are infinite antichains, so any family rules out a chain."""
    if spec.families():
        return False
    return all(spec.leq(a, b) or spec.leq(b, a) for a, b in combinations(spec.nodes, 2))
