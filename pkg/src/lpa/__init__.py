"""Ideal theory of Leavitt path algebras of finite graphs, decided from generator data."""

from .graph import OMEGA, Cycle, Graph, graph_report, load_graph, simple_cycles
from .hss import AdmissiblePair, CapExceeded, enumerate_admissible_pairs, enumerate_hss, quotient
from .ideals import IdealRep, classify_prime, contains, ideal_sum, intersect, is_semiprime, validate
from .poly import GF, QQ, Poly, parse_poly
from .posets import FinPoset, check_properties, realize, verify_realization
from .spectrum import compute_spec, kaplansky_pair, regularity_report, union_prime_scan

__version__ = "0.1.0"

__all__ = [
    "OMEGA", "Cycle", "Graph", "graph_report", "load_graph", "simple_cycles",
    "AdmissiblePair", "CapExceeded", "enumerate_admissible_pairs", "enumerate_hss", "quotient",
    "IdealRep", "classify_prime", "contains", "ideal_sum", "intersect", "is_semiprime", "validate",
    "GF", "QQ", "Poly", "parse_poly",
    "FinPoset", "check_properties", "realize", "verify_realization",
    "compute_spec", "kaplansky_pair", "regularity_report", "union_prime_scan",
]
