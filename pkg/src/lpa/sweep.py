"""Exhaustive small-graph corpora and the per-graph equivalence checks run over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .graph import OMEGA, Graph, graph_report, mult_from_json
from .hss import enumerate_admissible_pairs, exit_free_cycles
from .spectrum import compute_spec, kaplansky_pair, regularity_report, union_prime_scan

DEFAULT_MULTS = (0, 1, 2, OMEGA)


def parse_mults(text: str) -> tuple:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append(mult_from_json(int(tok) if tok.isdigit() else tok, "--mults"))
    return tuple(dict.fromkeys(out))


def graphs_up_to_iso(n: int, mults=DEFAULT_MULTS) -> list[Graph]:
    """Every graph on n vertices with multiplicities from ``mults``, one per isomorphism class."""
    cells = [(i, j) for i in range(n) for j in range(n)]
    perms = list(permutations(range(n)))
    order = {m: k for k, m in enumerate(mults)}
    seen = set()
    names = [f"v{i}" for i in range(n)]
    out = []
    for values in product(mults, repeat=len(cells)):
        m = dict(zip(cells, values))
        key = min(tuple(order[m[(p.index(i), p.index(j))]] for i, j in cells) for p in perms)
        if key in seen:
            continue
        seen.add(key)
        out.append(Graph.build(names, [(names[i], names[j], v) for (i, j), v in m.items() if v]))
    return out


def corpus(max_vertices: int, mults=DEFAULT_MULTS) -> list[Graph]:
    return [g for n in range(1, max_vertices + 1) for g in graphs_up_to_iso(n, mults)]


# -- per-graph checks ---------------------------------------------------------------


def k_equivalence_holds(g: Graph, cap: int | None = None) -> bool:
    """Condition (K) holds exactly when no quotient by an admissible pair keeps a cycle without exits."""
    all_graded = not any(exit_free_cycles(g, p) for p in enumerate_admissible_pairs(g, cap))
    return graph_report(g).condition_K == all_graded


def regularity_consistent(g: Graph, cap: int | None = None) -> bool:
    return regularity_report(g, cap).consistent


def kaplansky_holds(g: Graph, cap: int | None = None) -> bool:
    spec = compute_spec(g, cap)
    for a in spec.nodes:
        for b in spec.nodes:
            if spec.less(a, b):
                lo, hi = kaplansky_pair(spec, a, b)
                if not (spec.leq(a, lo) and spec.less(lo, hi) and spec.leq(hi, b)):
                    return False
                if any(spec.less(lo, t) and spec.less(t, hi) for t in spec.nodes):
                    return False
    return True


def no_union_primes(g: Graph, cap: int | None = None) -> bool:
    return not union_prime_scan(compute_spec(g, cap))


CHECKS = {
    "condition_K_iff_all_graded": k_equivalence_holds,
    "regular_iff_acyclic_witnesses": regularity_consistent,
    "kaplansky_pairs": kaplansky_holds,
    "no_union_primes": no_union_primes,
}


@dataclass
class SweepResult:
    graphs: int = 0
    failures: dict[str, list] = field(default_factory=dict)

    def to_document(self) -> dict:
        return {
            "graphs": self.graphs,
            "checks": {name: {"counterexamples": len(self.failures.get(name, [])),
                              "examples": self.failures.get(name, [])[:3]}
                       for name in CHECKS},
        }


def run_sweep(max_vertices: int, mults=DEFAULT_MULTS, cap: int | None = None) -> SweepResult:
    result = SweepResult()
    for g in corpus(max_vertices, mults):
        result.graphs += 1
        for name, check in CHECKS.items():
            if not check(g, cap):
                result.failures.setdefault(name, []).append(g.to_document())
    return result
