"""Finite directed multigraphs with possibly infinite edge multiplicities.

Multiplicities are non-negative integers or :data:`OMEGA`, which stands for a
countably infinite family of parallel edges.  Graphs are immutable; every
function here is pure.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

OMEGA = math.inf

SINK = "sink"
REGULAR = "regular"
INFINITE_EMITTER = "infinite_emitter"


class GraphError(ValueError):
    """Raised for malformed graph documents or unknown vertices."""


def mult_to_json(m):
    return "inf" if m == OMEGA else int(m)


def mult_from_json(raw, where: str = "edge"):
    if isinstance(raw, str):
        if raw.strip().lower() in ("inf", "omega", "ω"):
            return OMEGA
        raise GraphError(f"{where}: multiplicity must be an integer or 'inf', got {raw!r}")
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise GraphError(f"{where}: multiplicity must be an integer or 'inf', got {raw!r}")
    if raw < 0:
        raise GraphError(f"{where}: negative multiplicity {raw}")
    return raw


def add_mults(values: Iterable) -> float | int:
    total = 0
    for m in values:
        if m == OMEGA:
            return OMEGA
        total += m
    return total


@dataclass(frozen=True)
class Cycle:
    """A cycle up to shift, stored with its least vertex first."""

    verts: tuple[str, ...]

    def __post_init__(self):
        if not self.verts:
            raise GraphError("a cycle needs at least one vertex")
        if len(set(self.verts)) != len(self.verts):
            raise GraphError(f"cycle {list(self.verts)} repeats a vertex")

    @classmethod
    def from_sequence(cls, verts: Iterable[str]) -> Cycle:
        verts = tuple(verts)
        if not verts:
            raise GraphError("a cycle needs at least one vertex")
        i = verts.index(min(verts))
        return cls(verts[i:] + verts[:i])

    @property
    def base(self) -> str:
        return self.verts[0]

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.verts)

    def edges(self) -> list[tuple[str, str]]:
        n = len(self.verts)
        return [(self.verts[i], self.verts[(i + 1) % n]) for i in range(n)]

    def sort_key(self):
        return (len(self.verts), self.verts)

    def __len__(self):
        return len(self.verts)

    def __str__(self):
        return "(" + " ".join(self.verts) + ")"


@dataclass(frozen=True)
class CycleInfo:
    cycle: Cycle
    has_exit: bool
    is_wk: bool


@dataclass(frozen=True)
class GraphReport:
    acyclic: bool
    condition_L: bool
    condition_K: bool


@dataclass(frozen=True, eq=True)
class Graph:
    """A nonempty finite graph; ``mult`` only stores positive multiplicities."""

    vertices: tuple[str, ...]
    mult: Mapping[tuple[str, str], float | int] = field(hash=False, compare=False)
    _key: tuple = field(init=False, repr=False, hash=True, compare=True)

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("a graph needs at least one vertex")
        if tuple(sorted(set(self.vertices))) != self.vertices:
            raise GraphError("vertices must be unique and sorted; use Graph.build")
        vs = set(self.vertices)
        clean = {}
        for (u, v), m in self.mult.items():
            if u not in vs or v not in vs:
                raise GraphError(f"edge ({u}, {v}) has an undeclared endpoint")
            if m < 0:
                raise GraphError(f"edge ({u}, {v}) has negative multiplicity")
            if m:
                clean[(u, v)] = m
        object.__setattr__(self, "mult", clean)
        object.__setattr__(self, "_key", (self.vertices, tuple(sorted(clean.items()))))
        out: dict[str, dict[str, float | int]] = {v: {} for v in self.vertices}
        inc: dict[str, dict[str, float | int]] = {v: {} for v in self.vertices}
        for (u, v), m in clean.items():
            out[u][v] = m
            inc[v][u] = m
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)
        object.__setattr__(self, "_cache", {})

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, object]] = ()) -> Graph:
        """Build a graph from vertex names and ``(src, dst, mult)`` triples.

        Repeated triples on the same pair add up.
        """
        vertices = list(vertices)
        seen = set()
        for v in vertices:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex identifiers must be nonempty strings, got {v!r}")
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        mult: dict[tuple[str, str], float | int] = {}
        for i, edge in enumerate(edges):
            try:
                u, v, m = edge
            except (TypeError, ValueError):
                raise GraphError(f"edges[{i}]: expected [src, dst, mult], got {edge!r}") from None
            if u not in seen or v not in seen:
                raise GraphError(f"edges[{i}]: endpoint of ({u}, {v}) is not a declared vertex")
            if m != OMEGA:
                m = mult_from_json(m, f"edges[{i}]")
            mult[(u, v)] = add_mults([mult.get((u, v), 0), m])
        return cls(tuple(sorted(vertices)), mult)

    # -- adjacency ---------------------------------------------------------

    def successors(self, v: str) -> dict[str, float | int]:
        return self._out[self._check(v)]

    def predecessors(self, v: str) -> dict[str, float | int]:
        return self._in[self._check(v)]

    def out_mult(self, v: str) -> float | int:
        return add_mults(self.successors(v).values())

    def m(self, u: str, v: str) -> float | int:
        return self.mult.get((u, v), 0)

    def vertex_class(self, v: str) -> str:
        outs = self.successors(v).values()
        if not outs:
            return SINK
        if any(m == OMEGA for m in outs):
            return INFINITE_EMITTER
        return REGULAR

    def is_row_finite(self) -> bool:
        return all(m != OMEGA for m in self.mult.values())

    def _check(self, v: str) -> str:
        if v not in self._out:
            raise GraphError(f"unknown vertex {v!r}")
        return v

    def check_vertices(self, vs: Iterable[str]) -> frozenset[str]:
        return frozenset(self._check(v) for v in vs)

    # -- documents ---------------------------------------------------------

    def to_document(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v, mult_to_json(m)] for (u, v), m in sorted(self.mult.items())],
        }

    def __repr__(self):
        edges = ", ".join(f"{u}->{v}" + ("" if m == 1 else f"x{mult_to_json(m)}")
                          for (u, v), m in sorted(self.mult.items()))
        return f"Graph({list(self.vertices)}; {edges})"


def load_graph(text: str) -> Graph:
    """Parse a JSON graph document ``{"vertices": [...], "edges": [[src, dst, mult], ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    return graph_from_document(doc)


def graph_from_document(doc) -> Graph:
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    if "vertices" not in doc:
        raise GraphError("graph document: missing field 'vertices'")
    vertices = doc["vertices"]
    edges = doc.get("edges", [])
    if not isinstance(vertices, list):
        raise GraphError("field 'vertices' must be a list")
    if not isinstance(edges, list):
        raise GraphError("field 'edges' must be a list")
    return Graph.build(vertices, edges)


# -- reachability ------------------------------------------------------------


def tree(g: Graph, u: str) -> frozenset[str]:
    """All vertices reachable from ``u`` (including ``u``)."""
    cache = g._cache.setdefault("tree", {})
    if u in cache:
        return cache[u]
    g._check(u)
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g._out[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    cache[u] = result = frozenset(seen)
    return result


def reaches(g: Graph, u: str, v: str) -> bool:
    """``u >= v``: there is a path of length >= 0 from ``u`` to ``v``."""
    g._check(v)
    return v in tree(g, u)


def up_set(g: Graph, u: str) -> frozenset[str]:
    """``{v : v >= u}``."""
    g._check(u)
    return frozenset(v for v in g.vertices if u in tree(g, v))


def is_downward_directed(g: Graph, d: Iterable[str]) -> bool:
    d = g.check_vertices(d)
    if not d:
        return False
    trees = {x: tree(g, x) & d for x in d}
    items = sorted(d)
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if not trees[a] & trees[b]:
                return False
    return True


# -- cycles --------------------------------------------------------------------


def _vertex_cycles(g: Graph) -> list[Cycle]:
    cycles = []
    for start in g.vertices:
        # only vertices > start, so each cycle is found once, in canonical rotation
        path = [start]
        on_path = {start}

        def extend(x):
            for y in sorted(g._out[x]):
                if y == start:
                    cycles.append(Cycle(tuple(path)))
                elif y > start and y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    extend(y)
                    path.pop()
                    on_path.discard(y)

        extend(start)
    cycles.sort(key=Cycle.sort_key)
    return cycles


def simple_cycles(g: Graph) -> list[CycleInfo]:
    """All cycles up to shift (vertex sequences), with exit and WK flags.

    A parallel edge on a cycle's own pair is an exit, and makes the cycle
    non-WK because it yields a second edge-level cycle through the same
    vertices.
    """
    if "cycles" in g._cache:
        return g._cache["cycles"]
    cycles = _vertex_cycles(g)
    on_cycles: dict[str, int] = {}
    for c in cycles:
        for v in c.verts:
            on_cycles[v] = on_cycles.get(v, 0) + 1
    infos = []
    for c in cycles:
        has_exit = any(g.out_mult(v) != 1 for v in c.verts)
        parallel = any(g.m(u, v) != 1 for u, v in c.edges())
        shared = any(on_cycles[v] > 1 for v in c.verts)
        infos.append(CycleInfo(c, has_exit, not (parallel or shared)))
    g._cache["cycles"] = infos
    return infos


def cycle_info(g: Graph, c: Cycle) -> CycleInfo | None:
    for info in simple_cycles(g):
        if info.cycle == c:
            return info
    return None


def is_cycle(g: Graph, verts: Iterable[str]) -> bool:
    verts = tuple(verts)
    if not verts or len(set(verts)) != len(verts):
        return False
    g.check_vertices(verts)
    n = len(verts)
    return all(g.m(verts[i], verts[(i + 1) % n]) >= 1 for i in range(n))


def _returns_to(g: Graph, v: str) -> float | int:
    """Number of simple closed paths based at ``v``, saturated at 2."""
    # paths v -> ... -> v whose interior avoids v; interior vertices must be
    # reachable from v and able to reach v without passing through v
    fwd = set()
    queue = deque(y for y in g._out[v] if y != v)
    fwd.update(queue)
    while queue:
        x = queue.popleft()
        for y in g._out[x]:
            if y != v and y not in fwd:
                fwd.add(y)
                queue.append(y)
    back = set()
    queue = deque(x for x in g._in[v] if x != v)
    back.update(queue)
    while queue:
        y = queue.popleft()
        for x in g._in[y]:
            if x != v and x not in back:
                back.add(x)
                queue.append(x)
    mid = fwd & back
    # a cycle inside the interior gives infinitely many simple closed paths
    sub_edges = {x: [y for y in g._out[x] if y in mid] for x in mid}
    if _has_cycle(mid, sub_edges):
        return 2
    memo: dict[str, float | int] = {}

    def count(x):
        if x in memo:
            return memo[x]
        total = 0
        for y, m in g._out[x].items():
            k = 1 if y == v else (count(y) if y in mid else 0)
            if k:
                total += m * k
        memo[x] = total = min(total, 2)
        return total

    total = 0
    for y, m in g._out[v].items():
        k = 1 if y == v else (count(y) if y in mid else 0)
        if k:
            total += m * k
    return min(total, 2)


def _has_cycle(nodes, edges) -> bool:
    state: dict[str, int] = {}
    for root in nodes:
        if root in state:
            continue
        stack = [(root, iter(edges[root]))]
        state[root] = 1
        while stack:
            x, it = stack[-1]
            for y in it:
                s = state.get(y)
                if s == 1:
                    return True
                if s is None:
                    state[y] = 1
                    stack.append((y, iter(edges[y])))
                    break
            else:
                state[x] = 2
                stack.pop()
    return False


def graph_report(g: Graph) -> GraphReport:
    infos = simple_cycles(g)
    on_cycle = {v for info in infos for v in info.cycle.verts}
    return GraphReport(
        acyclic=not infos,
        condition_L=all(info.has_exit for info in infos),
        condition_K=all(_returns_to(g, v) >= 2 for v in on_cycle),
    )


def is_acyclic(g: Graph) -> bool:
    return not simple_cycles(g)
