"""Quiver operations that preserve silting-discreteness, and a reduction driver.

The driver takes a non-discrete quiver to one of the core shapes (a), (b),
(c) or a degree-0 Kronecker quiver, recording every step so the result can
be replayed and checked independently.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Sequence

from .classify import is_discrete
from .quiver import (
    Arrow,
    GradedQuiver,
    QuiverError,
    apply_potential,
    connected,
    degree_zero_part,
    dynkin_normalization,
    graph_type,
    is_acyclic,
    normalize,
    opposite,
    parse_quiver,
    structural_key,
)

OPS = ("Contract", "Delete", "MutateSink", "MutateSource")


class ReductionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# operations


def _require(q: GradedQuiver, i: str) -> None:
    if not q.has_vertex(i):
        raise QuiverError(f"unknown vertex {i!r}")


def delete_vertex(q: GradedQuiver, i: str) -> GradedQuiver:
    _require(q, i)
    return GradedQuiver(
        tuple(v for v in q.vertices if v != i),
        tuple(a for a in q.arrows if a.source != i and a.target != i),
    )


def contract_vertex(q: GradedQuiver, i: str) -> GradedQuiver:
    """Remove ``i`` and add ``alpha∘beta`` for every ``beta`` into ``i`` and ``alpha`` out of it."""
    base = delete_vertex(q, i)
    taken = {a.name for a in base.arrows}
    new = []
    for beta in sorted(q.incoming(i), key=lambda a: a.name):
        for alpha in sorted(q.outgoing(i), key=lambda a: a.name):
            name = f"{alpha.name}∘{beta.name}"
            if name in taken:
                k = 2
                while f"{name}~{k}" in taken:
                    k += 1
                name = f"{name}~{k}"
            taken.add(name)
            new.append(Arrow(name, beta.source, alpha.target, alpha.degree + beta.degree))
    return GradedQuiver(base.vertices, base.arrows + tuple(new))


def _common_degree(arrows) -> int | None:
    degs = {a.degree for a in arrows}
    return degs.pop() if len(degs) == 1 else None


def is_sink(q: GradedQuiver, i: str) -> bool:
    """No arrows leave ``i``, some enter it, and all entering arrows share one degree."""
    return q.has_vertex(i) and not q.outgoing(i) and _common_degree(q.incoming(i)) is not None


def is_source(q: GradedQuiver, i: str) -> bool:
    return q.has_vertex(i) and not q.incoming(i) and _common_degree(q.outgoing(i)) is not None


def _star(name: str, taken: set[str]) -> str:
    out = name[:-1] if name.endswith("*") else name + "*"
    while out in taken:
        out += "*"
    return out


def _flip(q: GradedQuiver, i: str, flipped) -> GradedQuiver:
    flipped = list(flipped)
    names = {a.name for a in flipped}
    taken = {a.name for a in q.arrows if a.name not in names}
    arrows = [a for a in q.arrows if a.name not in names]
    for a in flipped:
        name = _star(a.name, taken)
        taken.add(name)
        arrows.append(Arrow(name, a.target, a.source, -a.degree))
    return GradedQuiver(q.vertices, tuple(arrows))


def mutate_sink(q: GradedQuiver, i: str) -> GradedQuiver:
    """Reverse every arrow into the sink ``i``; common degree ``r`` becomes ``-r``."""
    _require(q, i)
    if not is_sink(q, i):
        detail = ", ".join(f"{a.name}:{a.degree}" for a in q.incoming(i))
        out = ", ".join(a.name for a in q.outgoing(i))
        raise ReductionError(
            f"{i} is not a restrictive sink (incoming {detail or 'none'}; outgoing {out or 'none'})"
        )
    return _flip(q, i, q.incoming(i))


def mutate_source(q: GradedQuiver, i: str) -> GradedQuiver:
    _require(q, i)
    if not is_source(q, i):
        detail = ", ".join(f"{a.name}:{a.degree}" for a in q.outgoing(i))
        inc = ", ".join(a.name for a in q.incoming(i))
        raise ReductionError(
            f"{i} is not a restrictive source (outgoing {detail or 'none'}; incoming {inc or 'none'})"
        )
    return _flip(q, i, q.outgoing(i))


def apply_op(q: GradedQuiver, op: str, arg) -> GradedQuiver:
    if op == "Delete":
        return delete_vertex(q, arg)
    if op == "Contract":
        return contract_vertex(q, arg)
    if op == "MutateSink":
        return mutate_sink(q, arg)
    if op == "MutateSource":
        return mutate_source(q, arg)
    if op == "TakeOpposite":
        return opposite(q)
    if op == "ApplyPotential":
        return apply_potential(q, arg)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# arrow selection


def _tree_walk(tree: GradedQuiver, u: str, v: str) -> list[str]:
    adj: dict[str, list[str]] = {x: [] for x in tree.vertices}
    for a in tree.arrows:
        adj[a.source].append(a.target)
        adj[a.target].append(a.source)
    prev = {u: None}
    todo = deque([u])
    while todo:
        x = todo.popleft()
        for y in sorted(adj[x]):
            if y not in prev:
                prev[y] = x
                todo.append(y)
    if v not in prev:
        raise ReductionError(f"{u} and {v} are not joined in the degree-0 part")
    walk = [v]
    while walk[-1] != u:
        walk.append(prev[walk[-1]])
    return walk[::-1]


@dataclass(frozen=True)
class ArrowChoice:
    arrow: Arrow
    n: int
    N: int
    walk: tuple[str, ...]


def select_minimal_negative_arrow(q: GradedQuiver) -> ArrowChoice:
    """Negative arrow whose endpoints are closest in the degree-0 tree.

    Ties go to the largest number of negative arrows with the same source and
    target, then to the least arrow name.
    """
    q0 = degree_zero_part(q)
    if not connected(q0):
        raise ReductionError("degree-0 part is disconnected")
    if len(q0.arrows) != len(q.vertices) - 1:
        raise ReductionError("degree-0 part is not a tree")
    negative = [a for a in q.arrows if a.degree < 0]
    if not negative:
        raise ReductionError("no negative arrows")
    best = None
    for a in negative:
        walk = _tree_walk(q0, a.source, a.target)
        N = sum(1 for b in negative if b.source == a.source and b.target == a.target)
        key = (len(walk) - 1, -N, a.name)
        if best is None or key < best[0]:
            best = (key, ArrowChoice(a, len(walk) - 1, N, tuple(walk)))
    return best[1]


# ---------------------------------------------------------------------------
# core shapes


@dataclass(frozen=True)
class CoreShape:
    """A recognised terminal shape.

    ``vertex_map`` and ``arrow_map`` send the canonical quiver (or its
    opposite when ``opposite`` is set) onto ``matched_quiver``, whose degrees
    are the canonical ones shifted by ``potential``.
    """

    tag: str | None
    params: tuple[int, ...] = ()
    matched_quiver: GradedQuiver | None = None
    canonical: GradedQuiver | None = None
    opposite: bool = False
    vertex_map: Mapping[str, str] = field(default_factory=dict)
    arrow_map: Mapping[str, str] = field(default_factory=dict)
    potential: Mapping[str, int] = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.tag is None:
            return "None"
        name = {"CaseA": "(a)", "CaseB": "(b)", "CaseC": "(c)", "KroneckerDegZero": "degree-0 Kronecker"}[self.tag]
        return f"opposite of {name}" if self.opposite else name

    @property
    def witness_available(self) -> bool:
        if self.tag == "CaseA":
            return self.params == (1,)
        if self.tag == "CaseB":
            return gcd(*self.params) == 1
        if self.tag == "CaseC":
            a = self.params[1:]
            if a[0] == 0:
                return True
            return gcd(a[0], a[1]) == 1 and (len(a) == 2 or a[0] + a[1] >= a[2])
        return self.tag == "KroneckerDegZero"

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "label": self.label,
            "params": list(self.params),
            "opposite": self.opposite,
            "iso": dict(sorted(self.vertex_map.items())),
            "witness_available": self.witness_available if self.tag else False,
        }

    def witness_family(self, lambdas: Sequence, field_):
        """Build the brick family on the canonical quiver and move it onto the matched quiver."""
        from .repcat.families import (
            build_L_case_a,
            build_L_case_b,
            build_L_kron_deg0,
            build_L_special,
            extend_by_zero,
        )
        from .repcat.rep import dual, transport

        if self.tag is None:
            raise ReductionError("no core shape to build a witness on")
        reps = []
        for lam in lambdas:
            if self.tag == "CaseA":
                M = build_L_case_a(lam, field_, self.params[0])
            elif self.tag == "CaseB":
                M = build_L_case_b(lam, *self.params, field=field_)
            elif self.tag == "KroneckerDegZero":
                M = build_L_kron_deg0(lam, self.params[0], field_)
            else:
                a = self.params[1:]
                if a[0] == 0:
                    M = extend_by_zero(build_L_kron_deg0(lam, 2, field_), self.canonical)
                else:
                    M = build_L_special(lam, a, field_)
            if self.opposite:
                M = dual(M)
            reps.append(transport(M, self.matched_quiver, self.vertex_map, self.arrow_map, self.potential))
        return reps


NO_MATCH = CoreShape(None)


def _kronecker_canonical(degrees: Sequence[int]) -> GradedQuiver:
    return GradedQuiver.from_arrows(
        ["1", "2"], [Arrow(f"k{i}", "1", "2", d) for i, d in enumerate(degrees)]
    )


def _solve_potential(canon: GradedQuiver, q: GradedQuiver, vmap, amap) -> dict[str, int] | None:
    """Potential ``g`` on q with ``deg_q(amap[a]) = deg(a) + g(s) - g(t)``, if one exists."""
    g = {vmap[canon.vertices[0]]: 0}
    pending = list(canon.arrows)
    while pending:
        progress = False
        for a in list(pending):
            b = q.arrow(amap[a.name])
            s, t = b.source, b.target
            diff = b.degree - a.degree
            if s in g and t not in g:
                g[t] = g[s] - diff
            elif t in g and s not in g:
                g[s] = g[t] + diff
            elif s not in g:
                continue
            pending.remove(a)
            progress = True
        if not progress:
            return None
    for a in canon.arrows:
        b = q.arrow(amap[a.name])
        if b.degree != a.degree + g[b.source] - g[b.target]:
            return None
    return g


def _match_against(canon: GradedQuiver, q: GradedQuiver, opp: bool):
    """Find vertex and arrow bijections carrying ``canon`` (or its opposite) onto q up to potential."""
    shape = opposite(canon) if opp else canon
    if len(shape.vertices) != len(q.vertices) or len(shape.arrows) != len(q.arrows):
        return None
    for perm in itertools.permutations(q.vertices):
        vmap = dict(zip(shape.vertices, perm))
        # group arrows by endpoints and try every pairing within a group
        groups: dict[tuple[str, str], list[Arrow]] = {}
        for a in shape.arrows:
            groups.setdefault((vmap[a.source], vmap[a.target]), []).append(a)
        targets: dict[tuple[str, str], list[Arrow]] = {}
        for b in q.arrows:
            targets.setdefault((b.source, b.target), []).append(b)
        if {k: len(v) for k, v in groups.items()} != {k: len(v) for k, v in targets.items()}:
            continue
        choices = [
            [list(zip([a.name for a in groups[k]], [b.name for b in p]))
             for p in itertools.permutations(targets[k])]
            for k in sorted(groups)
        ]
        for combo in itertools.product(*choices):
            amap = dict(pair for part in combo for pair in part)
            g = _solve_potential(shape, q, vmap, amap)
            if g is not None:
                return vmap, amap, g
    return None


def _pair_gap(arrows: Sequence[Arrow]) -> int:
    d = sorted(a.degree for a in arrows)
    return d[1] - d[0]


def _candidate_shapes(q: GradedQuiver):
    """Yield ``(tag, params, canonical quiver)`` for shapes with q's vertex and arrow counts."""
    from .repcat.families import case_a_quiver, case_b_quiver

    nv, na = len(q.vertices), len(q.arrows)
    by_pair: dict[frozenset, list[Arrow]] = {}
    for a in q.arrows:
        by_pair.setdefault(frozenset((a.source, a.target)), []).append(a)
    if nv == 2 and na >= 2 and len(by_pair) == 1:
        degs = sorted((a.degree for a in q.arrows), reverse=True)
        top = degs[0]
        if len(set(degs)) == 1:
            yield "KroneckerDegZero", (na,), _kronecker_canonical([0] * na)
        elif na >= 3:
            a = tuple(top - d for d in degs[1:])
            yield "CaseC", (na,) + a, _kronecker_canonical([0] + [-x for x in a])
    if nv == 3 and na == 3 and len(by_pair) == 2:
        pair = next(v for v in by_pair.values() if len(v) == 2)
        n = _pair_gap(pair)
        if n > 0:
            yield "CaseA", (n,), case_a_quiver(n)
    if nv == 3 and na == 4 and len(by_pair) == 2 and all(len(v) == 2 for v in by_pair.values()):
        gaps = sorted(_pair_gap(v) for v in by_pair.values())
        if gaps[0] > 0:
            yield "CaseB", tuple(gaps), case_b_quiver(*gaps)


def match_core_shape(q: GradedQuiver) -> CoreShape:
    """Recognise the core shapes up to relabelling, opposite and potential."""
    if not connected(q) or not is_acyclic(q):
        return NO_MATCH
    for tag, params, canon in _candidate_shapes(q):
        for opp in (False, True):
            found = _match_against(canon, q, opp)
            if found is not None:
                vmap, amap, g = found
                return CoreShape(tag, params, q, canon, opp, vmap, amap, g)
    return NO_MATCH


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class ReductionStep:
    op: str
    arg: object
    before: GradedQuiver
    after: GradedQuiver

    def describe(self) -> str:
        if self.op == "ApplyPotential":
            g = ", ".join(f"{v}:{x}" for v, x in sorted(self.arg.items()))
            return f"ApplyPotential {{{g}}}"
        if self.op == "TakeOpposite":
            return "TakeOpposite"
        return f"{self.op} {self.arg}"

    def to_json(self) -> dict:
        if self.op == "ApplyPotential":
            args = dict(sorted(self.arg.items()))
        elif self.op == "TakeOpposite":
            args = None
        else:
            args = self.arg
        return {"op": self.op, "args": args, "after": str(self.after)}


@dataclass(frozen=True)
class ReductionTrace:
    start: GradedQuiver
    steps: tuple[ReductionStep, ...]
    terminal: CoreShape
    notes: tuple[str, ...] = ()
    used_search: bool = False

    @property
    def final(self) -> GradedQuiver:
        return self.steps[-1].after if self.steps else self.start

    def operations(self, include_potential: bool = False) -> list[tuple[str, object]]:
        return [
            (s.op, s.arg) for s in self.steps if include_potential or s.op != "ApplyPotential"
        ]

    def to_json(self) -> dict:
        return {
            "start": str(self.start),
            "steps": [s.to_json() for s in self.steps],
            "terminal": self.terminal.to_json(),
            "notes": list(self.notes),
            "used_search": self.used_search,
        }


def replay(trace: ReductionTrace) -> bool:
    """Recompute every step from its ``before`` and compare with the stored quivers."""
    cur = trace.start
    for step in trace.steps:
        if step.before != cur:
            return False
        if apply_op(step.before, step.op, step.arg) != step.after:
            return False
        if not is_acyclic(step.after):
            return False
        cur = step.after
    if trace.terminal.tag is not None:
        if trace.terminal.matched_quiver != cur:
            return False
        if match_core_shape(cur).tag != trace.terminal.tag:
            return False
    return True


def trace_from_json(obj: Mapping) -> ReductionTrace:
    """Rebuild a trace from its JSON form by re-applying the listed operations."""
    start = parse_quiver(obj["start"])
    cur = start
    steps = []
    for s in obj["steps"]:
        op, args = s["op"], s["args"]
        if op == "ApplyPotential":
            args = {str(k): int(v) for k, v in args.items()}
        after = apply_op(cur, op, args)
        if parse_quiver(s["after"]) != after:
            raise ReductionError(f"step {op} {args} does not reproduce its recorded quiver")
        steps.append(ReductionStep(op, args, cur, after))
        cur = after
    term = match_core_shape(cur) if obj["terminal"]["tag"] is not None else NO_MATCH
    return ReductionTrace(start, tuple(steps), term, tuple(obj.get("notes", ())), obj.get("used_search", False))


# ---------------------------------------------------------------------------
# driver


def _admissible(q: GradedQuiver) -> bool:
    return len(q.vertices) >= 2 and connected(q) and not is_discrete(q)


def _moves(q: GradedQuiver):
    for op in OPS:
        for v in q.vertices:
            if op == "MutateSink" and not is_sink(q, v):
                continue
            if op == "MutateSource" and not is_source(q, v):
                continue
            yield op, v


def search_core(q: GradedQuiver, max_depth: int = 32, budget: int = 200_000) -> list[tuple[str, str]] | None:
    """Breadth-first search for the lexicographically least shortest operation sequence to a core shape."""
    if match_core_shape(q).tag is not None:
        return []
    seen = {structural_key(q)}
    frontier = [(q, [])]
    nodes = 0
    for _ in range(max_depth):
        nxt = []
        for cur, path in frontier:
            for op, v in _moves(cur):
                nodes += 1
                if nodes > budget:
                    return None
                out = apply_op(cur, op, v)
                if not _admissible(out):
                    continue
                key = structural_key(out)
                if key in seen:
                    continue
                seen.add(key)
                if match_core_shape(out).tag is not None:
                    return path + [(op, v)]
                nxt.append((out, path + [(op, v)]))
        if not nxt:
            return None
        frontier = nxt
    return None


class _Builder:
    def __init__(self, q: GradedQuiver):
        self.start = q
        self.cur = q
        self.steps: list[ReductionStep] = []
        self.notes: list[str] = []

    def push(self, op: str, arg) -> GradedQuiver:
        after = apply_op(self.cur, op, arg)
        self.steps.append(ReductionStep(op, arg, self.cur, after))
        self.cur = after
        return after

    def try_push(self, op: str, arg) -> bool:
        after = apply_op(self.cur, op, arg)
        if not _admissible(after):
            return False
        self.push(op, arg)
        return True


def _choose_i0(q: GradedQuiver, walk: Sequence[str]) -> tuple[list[str], str]:
    """Vertices off the walk adjacent to it, in preference order, and the adjacency used."""
    on = set(walk)
    interior = set(walk[1:-1])
    cands = {}
    for a in q.arrows:
        for x, y in ((a.source, a.target), (a.target, a.source)):
            if x not in on and y in on:
                zero = a.degree == 0
                info = cands.setdefault(x, [False, False])
                info[0] |= zero
                info[1] |= y in interior and zero
    if any(info[0] for info in cands.values()):
        kind = "degree-0"
        pool = [v for v, info in cands.items() if info[0]]
    else:
        kind = "any-arrow"
        pool = list(cands)
    pool.sort(key=lambda v: (not cands[v][1], v))
    return pool, kind


def _flow_through(q: GradedQuiver) -> list[str]:
    return [v for v in q.vertices if q.incoming(v) and q.outgoing(v)]


def _deterministic(b: _Builder) -> bool:
    q = b.cur
    if match_core_shape(q).tag is not None:
        return True
    q0 = degree_zero_part(q)
    if not connected(q0) or not graph_type(q0).is_dynkin:
        return False
    if not any(a.degree < 0 for a in q.arrows):
        return False
    choice = select_minimal_negative_arrow(q)
    b.notes.append(
        f"selected {choice.arrow.name}: {choice.arrow.source}->{choice.arrow.target}, "
        f"n={choice.n}, N={choice.N}, walk={'-'.join(choice.walk)}"
    )
    keep = set(choice.walk)
    if choice.N == 1:
        pool, kind = _choose_i0(q, choice.walk)
        for i0 in pool:
            trial = q
            for v in sorted(set(q.vertices) - keep - {i0}):
                trial = delete_vertex(trial, v)
            if _admissible(trial):
                keep.add(i0)
                b.notes.append(f"kept i0={i0} ({kind} adjacency)")
                break
        else:
            return False
    for v in sorted(set(q.vertices) - keep):
        b.push("Delete", v)
    if not _admissible(b.cur):
        return False
    last_mutated = None
    for _ in range(4 * len(q.vertices) + 8):
        cur = b.cur
        if match_core_shape(cur).tag is not None:
            return True
        if any(b.try_push("Contract", v) for v in _flow_through(cur)):
            last_mutated = None
            continue
        moved = False
        for v in cur.vertices:
            if v == last_mutated:
                continue
            op = "MutateSink" if is_sink(cur, v) else "MutateSource" if is_source(cur, v) else None
            if op and b.try_push(op, v):
                last_mutated = v
                moved = True
                break
        if not moved:
            return False
    return match_core_shape(b.cur).tag is not None


def reduce_to_core(q: GradedQuiver, search_depth: int = 32, search_budget: int = 200_000) -> ReductionTrace:
    """Reduce a non-discrete quiver to a core shape, recording each operation."""
    if not connected(q) or not is_acyclic(q):
        raise ReductionError("reduction needs a connected acyclic quiver")
    if is_discrete(q):
        raise ReductionError("input is silting-discrete; there is nothing to reduce")
    nq, g, ok = normalize(q)
    if not ok:
        raise ReductionError("could not normalize to a connected degree-0 part")
    if not graph_type(degree_zero_part(nq)).is_dynkin:
        alt = dynkin_normalization(q)
        if alt is not None:
            nq, g = apply_potential(q, alt), alt
    b = _Builder(q)
    if nq != q:
        b.push("ApplyPotential", g)
    mark = len(b.steps)
    used_search = False
    if not _deterministic(b):
        seq = search_core(b.cur, search_depth, search_budget)
        if seq is None and len(b.steps) > mark:
            b.notes.append("rules stalled; searching from the normalized quiver")
            b.steps = b.steps[:mark]
            b.cur = b.steps[-1].after if b.steps else b.start
            seq = search_core(b.cur, search_depth, search_budget)
        used_search = True
        if seq is None:
            b.notes.append("search exhausted")
            return ReductionTrace(q, tuple(b.steps), NO_MATCH, tuple(b.notes), True)
        for op, v in seq:
            b.push(op, v)
    return ReductionTrace(q, tuple(b.steps), match_core_shape(b.cur), tuple(b.notes), used_search)


def isomorphic(q1: GradedQuiver, q2: GradedQuiver) -> dict[str, str] | None:
    """A vertex bijection carrying q1 onto q2 with degrees preserved, ignoring arrow names."""
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return None

    def edges(q):
        out: dict[tuple[str, str], list[int]] = {}
        for a in q.arrows:
            out.setdefault((a.source, a.target), []).append(a.degree)
        return {k: sorted(v) for k, v in out.items()}

    def signature(q, v):
        return (sorted(a.degree for a in q.outgoing(v)), sorted(a.degree for a in q.incoming(v)))

    e1, e2 = edges(q1), edges(q2)
    sig2 = {v: signature(q2, v) for v in q2.vertices}
    order = sorted(q1.vertices, key=lambda v: -len(q1.outgoing(v)) - len(q1.incoming(v)))
    vmap: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for x, y in vmap.items():
            if e1.get((v, x), []) != e2.get((w, y), []) or e1.get((x, v), []) != e2.get((y, w), []):
                return False
        return e1.get((v, v), []) == e2.get((w, w), [])

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        sv = signature(q1, v)
        for w in q2.vertices:
            if w in used or sig2[w] != sv or not consistent(v, w):
                continue
            vmap[v] = w
            used.add(w)
            if extend(k + 1):
                return True
            del vmap[v]
            used.discard(w)
        return False

    return dict(vmap) if extend(0) else None
