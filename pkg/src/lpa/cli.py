"""The ``lpa`` command line.

Results go to stdout as JSON (sorted keys).  Failures print a JSON error
object to stderr and exit with 3 (bad input), 4 (cap exceeded) or
5 (unsupported computation); argparse usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import dot
from .graph import GraphError, graph_report, load_graph, mult_to_json
from .hss import (
    CapExceeded,
    InvalidPair,
    enumerate_admissible_pairs,
    enumerate_hss,
    pair_from_document,
    quotient,
)
from .ideals import (
    IdealError,
    ImproperIdeal,
    UnsupportedShape,
    classify_prime,
    ideal_sum,
    intersect,
    is_semiprime,
    validate,
)
from .poly import PolyError, UnsupportedError, field_from_document
from .posets import PosetError, check_properties, load_poset, realization_map, realize, verify_realization
from .spectrum import compute_spec, regularity_report
from .sweep import parse_mults, run_sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4
EXIT_UNSUPPORTED = 5


@dataclass
class CommandResult:
    code: int
    payload: dict

    @property
    def ok(self) -> bool:
        return self.code == EXIT_OK


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: invalid JSON ({exc.msg})") from None


def _graph(path: str):
    try:
        return load_graph(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _poset(path: str):
    try:
        return load_poset(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _field(args):
    return field_from_document(args.field) if args.field else None


def _ideal(g, path: str, field):
    try:
        return validate(g, _read_json(path), field)
    except (IdealError, PolyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _dot(args, text: str) -> None:
    if args.dot:
        dot.write_dot(text, args.dot)


# -- subcommands ---------------------------------------------------------------------


def cmd_hss(args) -> dict:
    g = _graph(args.graph)
    sets = enumerate_hss(g, args.cap)
    return {"hss": [sorted(h) for h in sets], "count": len(sets)}


def cmd_pairs(args) -> dict:
    g = _graph(args.graph)
    pairs = enumerate_admissible_pairs(g, args.cap)
    _dot(args, dot.pair_lattice_dot(pairs))
    return {"pairs": [p.to_document() for p in pairs], "count": len(pairs)}


def cmd_quotient(args) -> dict:
    g = _graph(args.graph)
    try:
        pair = pair_from_document(g, _read_json(args.pair))
    except GraphError as exc:
        raise InputError(str(exc)) from None
    q = quotient(g, pair)
    if q.is_empty:
        return {"empty": True}
    doc = q.graph.to_document()
    doc["empty"] = False
    doc["primed"] = dict(sorted(q.primed.items()))
    doc["primed_edges"] = [[s, d, *q.primed_edges[(s, d)]] for s, d in sorted(q.primed_edges)]
    return doc


def cmd_spec(args) -> dict:
    g = _graph(args.graph)
    field = _field(args)
    if args.max_degree is not None and field is None:
        raise InputError("--max-degree needs --field")
    spec = compute_spec(g, args.cap)
    _dot(args, dot.spec_dot(spec))
    doc = spec.to_document(field, args.max_degree)
    doc["graded_primes"] = len(spec.graded())
    doc["families"] = len(spec.families())
    return doc


def cmd_semiprime(args) -> dict:
    g = _graph(args.graph)
    ideal = _ideal(g, args.ideal, _field(args))
    return {"semiprime": is_semiprime(ideal), "ideal": ideal.to_document()}


def cmd_prime(args) -> dict:
    g = _graph(args.graph)
    ideal = _ideal(g, args.ideal, _field(args))
    doc = classify_prime(g, ideal).to_document()
    doc["ideal"] = ideal.to_document()
    return doc


def cmd_sum(args) -> dict:
    g = _graph(args.graph)
    a, b = _ideal(g, args.a, _field(args)), _ideal(g, args.b, _field(args))
    return ideal_sum(a, b, args.cap).to_document()


def cmd_intersect(args) -> dict:
    g = _graph(args.graph)
    a, b = _ideal(g, args.a, _field(args)), _ideal(g, args.b, _field(args))
    return intersect(a, b, args.cap).to_document()


def cmd_realize(args) -> dict:
    doc = realize(_poset(args.poset)).to_document()
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return doc


def cmd_props(args) -> dict:
    p = _poset(args.poset)
    _dot(args, dot.poset_dot(p))
    return check_properties(p).to_document()


def cmd_verify_realization(args) -> dict:
    p = _poset(args.poset)
    image = realization_map(p)
    return {
        "verified": verify_realization(p, args.cap),
        "map": {q: {"H": sorted(h), "S": sorted(s)} for q, (h, s) in image.items()},
    }


def cmd_regular(args) -> dict:
    g = _graph(args.graph)
    return regularity_report(g, args.cap).to_document()


def cmd_report(args) -> dict:
    r = graph_report(_graph(args.graph))
    return {"acyclic": r.acyclic, "condition_L": r.condition_L, "condition_K": r.condition_K}


def cmd_sweep(args) -> dict:
    try:
        mults = parse_mults(args.mults)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    doc = run_sweep(args.max_vertices, mults, args.cap).to_document()
    doc["mults"] = [mult_to_json(m) for m in mults]
    doc["max_vertices"] = args.max_vertices
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpa", description="Ideal theory of Leavitt path algebras of finite graphs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_, *positional, dot_=False, field=False):
        p = sub.add_parser(name, help=help_)
        for arg in positional:
            p.add_argument(arg)
        p.add_argument("--cap", type=int, default=None, help="enumeration cap (default: $LPA_CAP or 4096)")
        if dot_:
            p.add_argument("--dot", metavar="FILE", help="also write a Hasse diagram in DOT format")
        if field:
            p.add_argument("--field", help="Q (default) or F<p>, e.g. F2")
        p.set_defaults(func=func)
        return p

    add("hss", cmd_hss, "hereditary saturated sets", "graph")
    add("pairs", cmd_pairs, "admissible pairs (graded ideals)", "graph", dot_=True)
    add("quotient", cmd_quotient, "quotient graph by an admissible pair", "graph").add_argument(
        "--pair", required=True, help="pair document {H, S}")
    add("spec", cmd_spec, "prime spectrum", "graph", dot_=True, field=True).add_argument(
        "--max-degree", type=int, help="list family instances up to this degree")
    add("semiprime", cmd_semiprime, "semiprime verdict", "graph", "ideal", field=True)
    add("prime", cmd_prime, "prime verdict with witness", "graph", "ideal", field=True)
    add("sum", cmd_sum, "sum of two ideals", "graph", "a", "b", field=True)
    add("intersect", cmd_intersect, "intersection of two ideals", "graph", "a", "b", field=True)
    add("realize", cmd_realize, "graph E_P of a poset", "poset").add_argument("--out", help="write the graph here")
    add("props", cmd_props, "GLB/DC/DD/KAP of a poset", "poset", dot_=True)
    add("verify-realization", cmd_verify_realization, "check Spec L(E_P) against P", "poset")
    add("regular", cmd_regular, "von Neumann regularity report", "graph")
    add("report", cmd_report, "acyclicity and Conditions (L) and (K)", "graph")
    sw = add("sweep", cmd_sweep, "equivalence checks over all small graphs")
    sw.add_argument("--max-vertices", type=int, default=2)
    sw.add_argument("--mults", default="0,1,2,inf")
    return parser


def run(argv: list[str] | None = None) -> CommandResult:
    """Dispatch without touching the process: usage errors still raise SystemExit(2)."""
    args = build_parser().parse_args(argv)
    if args.cap is not None and args.cap < 1:
        return CommandResult(EXIT_INPUT, {"error": "input", "message": "--cap must be at least 1"})
    try:
        return CommandResult(EXIT_OK, args.func(args))
    except (InputError, GraphError, InvalidPair, IdealError, ImproperIdeal, PolyError, PosetError) as exc:
        return CommandResult(EXIT_INPUT, {"error": "input", "message": str(exc)})
    except CapExceeded as exc:
        return CommandResult(EXIT_CAP, {"error": "cap", "message": str(exc)})
    except (UnsupportedError, UnsupportedShape) as exc:
        return CommandResult(EXIT_UNSUPPORTED, {"error": "unsupported", "message": str(exc)})


def main(argv: list[str] | None = None) -> int:
    result = run(argv)
    text = json.dumps(result.payload, indent=2, sort_keys=True)
    print(text, file=sys.stdout if result.ok else sys.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
