"""Truncation level quivers and indecomposable counts.

For a non-positively graded quiver Q and n >= 0 the level quiver has vertices
``(i, l)`` for ``l`` in ``[-n, 0]`` and an arrow ``(i, l) -> (j, l + deg a)``
for every arrow ``a: i -> j`` whose endpoints both stay in the window.  Its
module category is the category of graded modules supported in ``[-n, 0]``.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Mapping

from .quiver import (
    Arrow,
    GradedQuiver,
    MultiGraphType,
    QuiverError,
    components,
    full_subquiver,
    graph_type,
    normalize,
)
from .repcat.field import ExactField

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LevelQuiver:
    """Ungraded level quiver; ``quiver`` uses vertex ids ``"<i>@<l>"``."""

    base: GradedQuiver
    n: int
    quiver: GradedQuiver

    def vertex(self, i: str, l: int) -> str:
        return f"{i}@{l}"

    def level_of(self, vid: str) -> tuple[str, int]:
        i, _, l = vid.rpartition("@")
        return i, int(l)


def build_qtilde(q: GradedQuiver, n: int) -> LevelQuiver:
    if n < 0:
        raise ValueError("n must be non-negative")
    bad = [a.name for a in q.arrows if a.degree > 0]
    if bad:
        raise QuiverError(f"positive-degree arrows present: {bad}; normalize first")
    levels = range(-n, 1)
    vertices = [f"{i}@{l}" for i in q.vertices for l in levels]
    arrows = []
    for a in q.arrows:
        for l in levels:
            if -n <= l + a.degree <= 0:
                arrows.append(Arrow(f"{a.name}@{l}", f"{a.source}@{l}", f"{a.target}@{l + a.degree}", 0))
    return LevelQuiver(q, n, GradedQuiver(tuple(vertices), tuple(arrows)))


@dataclass(frozen=True)
class Component:
    vertices: tuple[str, ...]
    type: MultiGraphType

    @property
    def is_dynkin(self) -> bool:
        return self.type.is_dynkin


def dynkin_decompose(L: LevelQuiver | GradedQuiver) -> list[Component]:
    q = L.quiver if isinstance(L, LevelQuiver) else L
    out = []
    for comp in components(q):
        sub = full_subquiver(q, comp)
        out.append(Component(tuple(comp), graph_type(sub)))
    return out


# ---------------------------------------------------------------------------
# root systems


def positive_roots(vertices, edges) -> list[tuple[int, ...]]:
    """Positive roots of a simply-laced Dynkin graph by reflection closure.

    ``edges`` are unordered vertex pairs; roots are coefficient vectors over
    ``sorted(vertices)``.  Raises if the closure does not stay finite.
    """
    verts = sorted(vertices)
    idx = {v: k for k, v in enumerate(verts)}
    r = len(verts)
    cartan = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for u, v in edges:
        i, j = idx[u], idx[v]
        if i == j:
            raise ValueError("loops have no finite root system")
        cartan[i][j] -= 1
        cartan[j][i] -= 1
    simple = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    seen = set(simple)
    todo = list(simple)
    limit = 10_000
    while todo:
        beta = todo.pop()
        for i in range(r):
            pair = sum(beta[k] * cartan[k][i] for k in range(r))
            if pair == 0:
                continue
            gamma = list(beta)
            gamma[i] -= pair
            gamma = tuple(gamma)
            if all(c >= 0 for c in gamma) and any(gamma) and gamma not in seen:
                seen.add(gamma)
                todo.append(gamma)
                if len(seen) > limit:
                    raise ValueError("reflection closure is not finite (graph is not Dynkin)")
    return sorted(seen)


def _standard_dynkin_edges(family: str, n: int) -> list[tuple[int, int]]:
    if family == "A" and n >= 1:
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D" and n >= 4:
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E" and n in (6, 7, 8):
        return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    raise ValueError(f"no Dynkin diagram of type {family}{n}")


def positive_root_count(t: MultiGraphType | str) -> int:
    """Number of positive roots for a type like ``A4`` / ``D5`` / ``E6``."""
    if isinstance(t, MultiGraphType):
        if not t.is_dynkin:
            raise ValueError(f"{t.label} is not Dynkin")
        family, n = t.family, t.size
    else:
        family, n = t[0], int(t[1:])
    edges = _standard_dynkin_edges(family, n)
    return len(positive_roots(range(n), edges))


# ---------------------------------------------------------------------------
# counts


@dataclass(frozen=True)
class IndecCount:
    finite: bool
    count: int | None = None
    witness_component: tuple[str, ...] | None = None
    components: tuple[Component, ...] = ()


def count_level(L: LevelQuiver) -> IndecCount:
    comps = dynkin_decompose(L)
    for c in comps:
        if not c.is_dynkin:
            return IndecCount(False, None, c.vertices, tuple(comps))
    return IndecCount(True, sum(positive_root_count(c.type) for c in comps), None, tuple(comps))


def count_indec(q: GradedQuiver, n: int) -> IndecCount:
    nq, _, _ = normalize(q)
    return count_level(build_qtilde(nq, n))


def roots_within_caps(L: LevelQuiver | GradedQuiver, caps: Mapping[str, int]) -> int:
    """Number of dimension vectors of indecomposables bounded by ``caps``.

    Only defined when every component is Dynkin.
    """
    q = L.quiver if isinstance(L, LevelQuiver) else L
    total = 0
    for comp in components(q):
        sub = full_subquiver(q, comp)
        if not graph_type(sub).is_dynkin:
            raise ValueError("component is not Dynkin")
        verts = sorted(comp)
        for root in positive_roots(verts, [(a.source, a.target) for a in sub.arrows]):
            if all(c <= caps.get(v, 0) for v, c in zip(verts, root)):
                total += 1
    return total


# ---------------------------------------------------------------------------
# brute-force oracle


def _all_matrices(field: ExactField, rows: int, cols: int):
    elems = field.elements()
    for entries in itertools.product(elems, repeat=rows * cols):
        yield tuple(tuple(entries[r * cols:(r + 1) * cols]) for r in range(rows))


def _general_linear(field: ExactField, n: int) -> list:
    return [m for m in _all_matrices(field, n, n) if field.det([list(r) for r in m])]


def _budget() -> int:
    raw = os.environ.get("GQPA_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def brute_force_indec(L: LevelQuiver | GradedQuiver, field: ExactField, caps: Mapping[str, int] | int,
                      budget: int | None = None) -> int:
    """Count isomorphism classes of indecomposables with dimensions within ``caps``.

    Enumerates every representation over the finite field, splits the set into
    orbits of the base-change group, and keeps the orbits whose endomorphism
    algebra has no idempotents besides 0 and 1.  Raises :class:`BudgetExceeded`
    before doing any work when the estimated cost is above ``budget``.
    """
    from .repcat.rep import GradedRep
    from .repcat.homological import endomorphisms_local

    if field.p is None:
        raise ValueError("the oracle needs a finite field")
    q = L.quiver if isinstance(L, LevelQuiver) else L
    if any(a.degree != 0 for a in q.arrows):
        raise ValueError("the oracle works on ungraded quivers")
    if isinstance(caps, int):
        caps = {v: caps for v in q.vertices}
    budget = _budget() if budget is None else budget
    verts = q.vertices
    p = field.p

    dim_vectors = [d for d in itertools.product(*(range(caps.get(v, 0) + 1) for v in verts)) if any(d)]
    gl_cache = {}
    cost = 0
    for d in dim_vectors:
        dims = dict(zip(verts, d))
        n_tuples = p ** sum(dims[a.source] * dims[a.target] for a in q.arrows)
        group = 1
        for v in verts:
            k = dims[v]
            size = 1
            for i in range(k):
                size *= p ** k - p ** i
            group *= size
        cost += n_tuples * max(group, 1)
    if cost > budget:
        raise BudgetExceeded(f"oracle cost estimate {cost} exceeds budget {budget}")

    count = 0
    for d in dim_vectors:
        dims = dict(zip(verts, d))
        for v in verts:
            if dims[v] not in gl_cache:
                gl_cache[dims[v]] = _general_linear(field, dims[v])
        arrows = q.arrows
        spaces = [list(_all_matrices(field, dims[a.target], dims[a.source])) for a in arrows]
        group = list(itertools.product(*(gl_cache[dims[v]] for v in verts)))
        inverses = [{v: _inverse(field, g[k]) for k, v in enumerate(verts)} for g in group]
        unseen = set(itertools.product(*spaces))
        while unseen:
            rep = min(unseen)
            orbit = set()
            for g, ginv in zip(group, inverses):
                gmap = dict(zip(verts, g))
                img = tuple(
                    _mul(field, _mul(field, gmap[a.target], m, dims[a.target]), ginv[a.source], dims[a.source])
                    for a, m in zip(arrows, rep)
                )
                orbit.add(img)
            unseen -= orbit
            module = GradedRep(
                q, field,
                {(v, 0): dims[v] for v in verts},
                {(a.name, 0): [list(r) for r in m] for a, m in zip(arrows, rep)},
            )
            if endomorphisms_local(module):
                count += 1
    return count


def _mul(field: ExactField, a, b, inner: int):
    p = field.p
    rows = len(a)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(inner)) % p for j in range(cols)) for i in range(rows)
    )


def _inverse(field: ExactField, m):
    n = len(m)
    if n == 0:
        return ()
    aug = [list(m[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    red, _ = field.rref(aug, 2 * n)
    return tuple(tuple(row[n:]) for row in red)
