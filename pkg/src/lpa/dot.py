"""Graphviz DOT output for Hasse diagrams."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .hss import AdmissiblePair, pair_leq
from .posets import FinPoset


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def hasse_dot(name: str, nodes: Iterable[str], covers: Iterable[tuple[str, str]],
              doubled: Iterable[str] = (), labels: dict[str, str] | None = None) -> str:
    """Edges run from each element up to the elements covering it; ``doubled`` nodes get a double border."""
    doubled = set(doubled)
    labels = labels or {}
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for n in nodes:
        attrs = [f"label={_quote(labels.get(n, n))}"]
        if n in doubled:
            attrs.append("peripheries=2")
        lines.append(f"  {_quote(n)} [{', '.join(attrs)}];")
    for a, b in covers:
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def pair_lattice_dot(pairs: list[AdmissiblePair]) -> str:
    keys = [str(p) for p in pairs]
    cov = []
    for a in pairs:
        for b in pairs:
            if a != b and pair_leq(a, b) and not any(
                    t not in (a, b) and pair_leq(a, t) and pair_leq(t, b) for t in pairs):
                cov.append((str(a), str(b)))
    return hasse_dot("pairs", keys, cov)


def spec_dot(spec) -> str:
    from .spectrum import covers

    labels = {}
    for n in spec.nodes:
        labels[n.key] = f"{n.key}\ncase {n.case}" + (f", u={n.u}" if n.u else "")
    return hasse_dot("spec", [n.key for n in spec.nodes],
                     [(a.key, b.key) for a, b in covers(spec)],
                     doubled=[n.key for n in spec.families()], labels=labels)


def poset_dot(p: FinPoset) -> str:
    return hasse_dot("poset", p.elements, p.covers())


def write_dot(text: str, path: str | Path) -> None:
    Path(path).write_text(text)
