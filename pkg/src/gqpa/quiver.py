"""Graded quivers: data model, text format, underlying-graph analysis, potentials.

A graded quiver is a finite set of vertices and a list of named arrows, each
carrying an integer degree.  Vertex identifiers are arbitrary whitespace-free
strings; every tie-break in this package orders them lexicographically.
"""
from __future__ import annotations

import itertools

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "Arrow",
    "GradedQuiver",
    "MultiGraphType",
    "QuiverError",
    "QuiverParseError",
    "parse_quiver",
    "serialize_quiver",
    "is_acyclic",
    "connected",
    "graph_type",
    "multigraph_type",
    "cycle_degree_totals",
    "apply_potential",
    "normalize",
    "degree_zero_part",
    "opposite",
    "relabel",
    "structural_key",
]


class QuiverError(ValueError):
    """Invalid quiver, or an operation whose precondition fails."""


class QuiverParseError(QuiverError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True, order=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int = 0


@dataclass(frozen=True)
class GradedQuiver:
    """Immutable graded quiver; vertices and arrows are stored in sorted order."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    _out: Mapping = field(default=None, init=False, repr=False, compare=False, hash=False)
    _in: Mapping = field(default=None, init=False, repr=False, compare=False, hash=False)
    _by_name: Mapping = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted({str(v) for v in self.vertices}))
        if len(verts) != len(tuple(self.vertices)):
            raise QuiverError("duplicate vertex identifier")
        for v in verts:
            if not v or any(ch.isspace() for ch in v):
                raise QuiverError(f"invalid vertex identifier {v!r}")
        arrows = tuple(sorted(
            Arrow(str(a.name), str(a.source), str(a.target), int(a.degree)) for a in self.arrows
        ))
        vset = set(verts)
        by_name = {}
        out, inc = defaultdict(list), defaultdict(list)
        for a in arrows:
            if a.name in by_name:
                raise QuiverError(f"duplicate arrow name {a.name!r}")
            if not a.name or any(ch.isspace() for ch in a.name) or ":" in a.name:
                raise QuiverError(f"invalid arrow name {a.name!r}")
            for end in (a.source, a.target):
                if end not in vset:
                    raise QuiverError(f"arrow {a.name!r} uses undeclared vertex {end!r}")
            by_name[a.name] = a
            out[a.source].append(a)
            inc[a.target].append(a)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_out", {v: tuple(out[v]) for v in verts})
        object.__setattr__(self, "_in", {v: tuple(inc[v]) for v in verts})

    @classmethod
    def from_arrows(cls, vertices: Iterable, arrows: Iterable) -> "GradedQuiver":
        """Build from ``(name, source, target, degree)`` tuples."""
        return cls(
            tuple(str(v) for v in vertices),
            tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows),
        )

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def outgoing(self, v: str) -> tuple[Arrow, ...]:
        return self._out[v]

    def incoming(self, v: str) -> tuple[Arrow, ...]:
        return self._in[v]

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def degrees(self) -> dict[str, int]:
        return {a.name: a.degree for a in self.arrows}

    def __str__(self) -> str:
        return serialize_quiver(self)


# ---------------------------------------------------------------------------
# text format


def parse_quiver(text: str) -> GradedQuiver:
    """Parse the line-oriented quiver format::

        vertices: 1 2 3
        arrow a: 1 -> 2 deg 0   # comment
    """
    vertices: list[str] = []
    seen_vertices: set[str] = set()
    arrows: list[Arrow] = []
    names: set[str] = set()
    arrow_lines: list[int] = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:") or line == "vertices":
            saw_header = True
            for v in line.partition(":")[2].split():
                if v in seen_vertices:
                    raise QuiverParseError(f"duplicate vertex {v!r}", lineno)
                seen_vertices.add(v)
                vertices.append(v)
        elif line.startswith("arrow ") or line.startswith("arrow\t"):
            head, colon, rest = line[len("arrow"):].partition(":")
            name = head.strip()
            if not colon or not name or any(ch.isspace() for ch in name):
                raise QuiverParseError("expected 'arrow <name>: <src> -> <tgt> deg <int>'", lineno)
            toks = rest.split()
            if len(toks) != 5 or toks[1] != "->" or toks[3] != "deg":
                raise QuiverParseError("expected 'arrow <name>: <src> -> <tgt> deg <int>'", lineno)
            try:
                degree = int(toks[4])
            except ValueError:
                raise QuiverParseError(f"malformed degree {toks[4]!r}", lineno) from None
            if name in names:
                raise QuiverParseError(f"duplicate arrow name {name!r}", lineno)
            names.add(name)
            arrows.append(Arrow(name, toks[0], toks[2], degree))
            arrow_lines.append(lineno)
        else:
            raise QuiverParseError(f"unrecognised line {line!r}", lineno)
    if not saw_header:
        raise QuiverParseError("missing 'vertices:' line")
    for a, lineno in zip(arrows, arrow_lines):
        for end in (a.source, a.target):
            if end not in seen_vertices:
                raise QuiverParseError(f"arrow {a.name!r} uses undeclared vertex {end!r}", lineno)
    try:
        return GradedQuiver(tuple(vertices), tuple(arrows))
    except QuiverError as exc:
        raise QuiverParseError(str(exc)) from None


def serialize_quiver(q: GradedQuiver) -> str:
    lines = ["vertices: " + " ".join(q.vertices)]
    lines.extend(f"arrow {a.name}: {a.source} -> {a.target} deg {a.degree}" for a in q.arrows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graph structure


def topological_order(q: GradedQuiver) -> list[str] | None:
    """Kahn order (least available vertex first), or None when q has a directed cycle."""
    indeg = {v: len(q.incoming(v)) for v in q.vertices}
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a in q.outgoing(v):
            indeg[a.target] -= 1
            if indeg[a.target] == 0:
                ready.append(a.target)
                ready.sort()
    return order if len(order) == len(q.vertices) else None


def is_acyclic(q: GradedQuiver) -> bool:
    return topological_order(q) is not None


def _components(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[list[str]]:
    adj = defaultdict(set)
    verts = sorted(vertices)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen: set[str] = set()
    comps = []
    for v in verts:
        if v in seen:
            continue
        comp, todo = [], [v]
        seen.add(v)
        while todo:
            x = todo.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        comps.append(sorted(comp))
    return comps


def components(q: GradedQuiver) -> list[list[str]]:
    """Vertex sets of the connected components of the underlying graph."""
    return _components(q.vertices, ((a.source, a.target) for a in q.arrows))


def connected(q: GradedQuiver) -> bool:
    return len(components(q)) == 1


def full_subquiver(q: GradedQuiver, keep: Iterable[str]) -> GradedQuiver:
    keep = set(keep)
    return GradedQuiver(
        tuple(v for v in q.vertices if v in keep),
        tuple(a for a in q.arrows if a.source in keep and a.target in keep),
    )


@dataclass(frozen=True)
class MultiGraphType:
    """Type of an underlying undirected multigraph.

    ``family`` is one of ``A``, ``D``, ``E``, ``Atilde`` or ``Other``; ``size``
    is the number of vertices.  For ``Atilde`` the cycle is stored as a fixed
    traversal: pairs ``(arrow name, aligned)`` where ``aligned`` is true when
    the arrow points along the direction of travel.
    """

    family: str
    size: int
    cycle: tuple[tuple[str, bool], ...] | None = None

    @property
    def is_dynkin(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def label(self) -> str:
        if self.family == "Other":
            return "Other"
        return f"{self.family}{self.size}" if self.is_dynkin else f"Atilde({self.size})"

    def __str__(self) -> str:
        return self.label


def multigraph_type(vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> MultiGraphType:
    """Classify a connected undirected multigraph given as ``(name, u, v)`` edges.

    Orientation of an edge is read as ``u -> v`` when recording the cycle traversal.
    """
    verts = sorted(vertices)
    edges = sorted(edges)
    nv, ne = len(verts), len(edges)
    if len(_components(verts, ((u, v) for _, u, v in edges))) != 1:
        raise QuiverError("graph type requires a connected quiver")
    if any(u == v for _, u, v in edges):
        return MultiGraphType("Other", nv)
    deg = defaultdict(int)
    adj = defaultdict(list)
    for name, u, v in edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].append((v, name, u, v))
        adj[v].append((u, name, u, v))
    if ne == nv - 1:
        branch = [v for v in verts if deg[v] >= 3]
        if not branch:
            return MultiGraphType("A", nv)
        if len(branch) > 1 or deg[branch[0]] != 3:
            return MultiGraphType("Other", nv)
        centre = branch[0]
        legs = []
        for nxt, *_ in adj[centre]:
            length, prev, cur = 1, centre, nxt
            while deg[cur] == 2:
                cur, prev = next(w for w, *_ in adj[cur] if w != prev), cur
                length += 1
            legs.append(length)
        legs.sort()
        if legs[0] == 1 and legs[1] == 1:
            return MultiGraphType("D", nv)
        if legs[0] == 1 and legs[1] == 2 and legs[2] in (2, 3, 4):
            return MultiGraphType("E", nv)
        return MultiGraphType("Other", nv)
    if ne == nv and all(deg[v] == 2 for v in verts):
        start = verts[0]
        first = min(adj[start], key=lambda t: (t[0], t[1]))
        walk = []
        cur, used = start, None
        edge = first
        while True:
            other, name, u, v = edge
            walk.append((name, u == cur))
            used = name
            cur = other
            if cur == start:
                break
            edge = next(t for t in adj[cur] if t[1] != used)
        return MultiGraphType("Atilde", nv, tuple(walk))
    return MultiGraphType("Other", nv)


def graph_type(q: GradedQuiver) -> MultiGraphType:
    return multigraph_type(q.vertices, ((a.name, a.source, a.target) for a in q.arrows))


def cycle_degree_totals(q: GradedQuiver) -> tuple[int, int]:
    """``(aligned_total, anti_total)`` around the fixed traversal of an Atilde quiver."""
    t = graph_type(q)
    if t.family != "Atilde":
        raise QuiverError(f"cycle totals need an Atilde quiver, got {t.label}")
    aligned = sum(q.arrow(n).degree for n, al in t.cycle if al)
    anti = sum(q.arrow(n).degree for n, al in t.cycle if not al)
    return aligned, anti


# ---------------------------------------------------------------------------
# potentials and normalization


def apply_potential(q: GradedQuiver, g: Mapping[str, int]) -> GradedQuiver:
    """Shift degrees: ``deg'(a) = deg(a) + g(s(a)) - g(t(a))``."""
    missing = [v for v in q.vertices if v not in g]
    if missing:
        raise QuiverError(f"potential undefined on {missing}")
    return GradedQuiver(
        q.vertices,
        tuple(Arrow(a.name, a.source, a.target, a.degree + g[a.source] - g[a.target]) for a in q.arrows),
    )


def degree_zero_part(q: GradedQuiver) -> GradedQuiver:
    return GradedQuiver(q.vertices, tuple(a for a in q.arrows if a.degree == 0))


def opposite(q: GradedQuiver) -> GradedQuiver:
    return GradedQuiver(q.vertices, tuple(Arrow(a.name, a.target, a.source, a.degree) for a in q.arrows))


def _longest_path_potential(q: GradedQuiver) -> dict[str, int]:
    order = topological_order(q)
    if order is None:
        raise QuiverError("normalize requires an acyclic quiver")
    g = {v: 0 for v in q.vertices}
    for v in order:
        for a in q.outgoing(v):
            g[a.target] = max(g[a.target], g[v] + a.degree)
    return g


def _merge_tight_components(q: GradedQuiver, g: dict[str, int]) -> dict[str, int]:
    """Move a feasible potential to a vertex of the feasible region.

    Feasible means every shifted degree is <= 0.  The component of the tight
    (degree-0) graph containing the least vertex is shifted as a block until a
    crossing arrow becomes tight, which strictly grows that component.
    """
    g = dict(g)
    root = q.vertices[0]
    while True:
        shifted = apply_potential(q, g)
        tight = [(a.source, a.target) for a in shifted.arrows if a.degree == 0]
        comp = set(next(c for c in _components(q.vertices, tight) if root in c))
        if len(comp) == len(q.vertices):
            return g
        out_slack = [-a.degree for a in shifted.arrows if a.source in comp and a.target not in comp]
        in_slack = [-a.degree for a in shifted.arrows if a.target in comp and a.source not in comp]
        # raising g on comp raises outgoing degrees; lowering raises incoming ones
        up = min(out_slack) if out_slack else None
        down = min(in_slack) if in_slack else None
        if down is None or (up is not None and up <= down):
            delta = up
        else:
            delta = -down
        for v in comp:
            g[v] += delta


def normalize(q: GradedQuiver) -> tuple[GradedQuiver, dict[str, int], bool]:
    """Shift q to non-positive degrees with connected degree-0 part.

    Inputs already in that form are returned unchanged with the zero
    potential.  Otherwise the longest-path potential (largest total degree of
    a path ending at each vertex) makes every degree non-positive, and tight
    components are then merged.  Returns ``(quiver, potential, q0_connected)``.
    """
    if not connected(q):
        raise QuiverError("normalize requires a connected quiver")
    if not is_acyclic(q):
        raise QuiverError("normalize requires an acyclic quiver")
    if all(a.degree <= 0 for a in q.arrows) and connected(degree_zero_part(q)):
        return q, {v: 0 for v in q.vertices}, True
    g = _merge_tight_components(q, _longest_path_potential(q))
    base = g[q.vertices[0]]
    g = {v: x - base for v, x in g.items()}
    out = apply_potential(q, g)
    return out, g, connected(degree_zero_part(out))


def dynkin_normalization(q: GradedQuiver, limit: int = 500_000) -> dict[str, int] | None:
    """A potential making q non-positive with degree-0 part a Dynkin tree, if one exists.

    Such a degree-0 part is a spanning tree T of the underlying graph; the
    potential zeroing T is unique up to a constant, so it suffices to try every
    spanning tree of Dynkin type and check that all other arrows turn negative.
    The least tree in arrow-name order wins.  Raises ValueError past ``limit``
    candidate edge sets.
    """
    verts = q.vertices
    k = len(verts) - 1
    arrows = sorted(q.arrows, key=lambda a: a.name)
    checked = 0
    for combo in itertools.combinations(arrows, k):
        checked += 1
        if checked > limit:
            raise ValueError("too many spanning-tree candidates")
        pairs = [(a.source, a.target) for a in combo]
        if len(_components(verts, pairs)) != 1:
            continue
        tree = GradedQuiver(verts, tuple(combo))
        if not graph_type(tree).is_dynkin:
            continue
        g = {verts[0]: 0}
        todo = deque([verts[0]])
        while todo:
            v = todo.popleft()
            for a in combo:
                if a.source == v and a.target not in g:
                    g[a.target] = g[v] + a.degree
                    todo.append(a.target)
                elif a.target == v and a.source not in g:
                    g[a.source] = g[v] - a.degree
                    todo.append(a.source)
        names = {a.name for a in combo}
        if all(a.degree + g[a.source] - g[a.target] < 0 for a in q.arrows if a.name not in names):
            return g
    return None


# ---------------------------------------------------------------------------
# relabelling and comparison


def relabel(q: GradedQuiver, vertex_map: Mapping[str, str], arrow_map: Mapping[str, str] | None = None) -> GradedQuiver:
    arrow_map = arrow_map or {}
    return GradedQuiver(
        tuple(vertex_map[v] for v in q.vertices),
        tuple(
            Arrow(arrow_map.get(a.name, a.name), vertex_map[a.source], vertex_map[a.target], a.degree)
            for a in q.arrows
        ),
    )


def structural_key(q: GradedQuiver) -> tuple:
    """Equality key ignoring arrow names."""
    return q.vertices, tuple(sorted((a.source, a.target, a.degree) for a in q.arrows))
