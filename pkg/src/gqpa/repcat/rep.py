"""Finite-dimensional graded representations over an exact field.

A representation assigns a space to each (vertex, degree) and, for every
arrow ``a`` of degree ``e`` and every source degree ``d``, a block
``(s(a), d) -> (t(a), d + e)``.  Blocks are stored under ``(arrow name, d)``
with rows indexing the target basis; absent blocks are zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Mapping

from ..quiver import GradedQuiver, QuiverError, is_acyclic, opposite, parse_quiver
from .field import ExactField, Matrix

Key = tuple  # (vertex, degree)


class RepError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GradedRep:
    quiver: GradedQuiver
    field: ExactField
    spaces: Mapping[Key, int]
    maps: Mapping[tuple[str, int], Matrix] = dc_field(default_factory=dict)

    def __post_init__(self):
        q, F = self.quiver, self.field
        spaces = {}
        for (v, d), n in self.spaces.items():
            if not q.has_vertex(v):
                raise RepError(f"unknown vertex {v!r}")
            if n < 0:
                raise RepError(f"negative dimension at {(v, d)}")
            if n:
                spaces[(v, int(d))] = int(n)
        maps = {}
        for (name, d), block in self.maps.items():
            a = q.arrow(name)
            d = int(d)
            rows = spaces.get((a.target, d + a.degree), 0)
            cols = spaces.get((a.source, d), 0)
            if len(block) != rows or any(len(r) != cols for r in block):
                if rows == 0 or cols == 0:
                    if any(any(F(x) for x in r) for r in block):
                        raise RepError(f"nonzero block for {name} at degree {d} between zero spaces")
                    continue
                raise RepError(
                    f"block {name}@{d} has shape {len(block)}x{len(block[0]) if block else 0}, expected {rows}x{cols}"
                )
            if rows and cols:
                blk = [[F(x) for x in r] for r in block]
                if any(any(r) for r in blk):
                    maps[(name, d)] = blk
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "maps", maps)

    # -- access ------------------------------------------------------------

    def dim(self, v: str, d: int) -> int:
        return self.spaces.get((v, d), 0)

    def block(self, name: str, d: int) -> Matrix:
        """Block of arrow ``name`` leaving source degree ``d`` (zero matrix if absent)."""
        blk = self.maps.get((name, d))
        if blk is not None:
            return blk
        a = self.quiver.arrow(name)
        return self.field.zeros(self.dim(a.target, d + a.degree), self.dim(a.source, d))

    @property
    def total_dim(self) -> int:
        return sum(self.spaces.values())

    def degree_window(self) -> tuple[int, int] | None:
        if not self.spaces:
            return None
        ds = [d for _, d in self.spaces]
        return min(ds), max(ds)

    def dimension_vector(self) -> dict[Key, int]:
        return dict(self.spaces)

    def is_zero(self) -> bool:
        return not self.spaces

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedRep)
            and self.quiver == other.quiver
            and self.field == other.field
            and self.spaces == other.spaces
            and self.maps == other.maps
        )

    def __repr__(self) -> str:
        return f"GradedRep(dim={self.total_dim}, spaces={dict(sorted(self.spaces.items()))})"

    # -- constructions -----------------------------------------------------

    def shift(self, l: int) -> "GradedRep":
        """``M(l)`` with ``M(l)^j = M^(l+j)``."""
        return GradedRep(
            self.quiver, self.field,
            {(v, d - l): n for (v, d), n in self.spaces.items()},
            {(name, d - l): b for (name, d), b in self.maps.items()},
        )

    def with_block(self, name: str, d: int, block: Matrix) -> "GradedRep":
        maps = dict(self.maps)
        maps[(name, d)] = block
        return GradedRep(self.quiver, self.field, self.spaces, maps)

    def apply_path(self, path: tuple[str, ...], d: int, vec: list) -> list:
        """Image of ``vec`` in degree ``d`` under the arrows of ``path`` (first arrow first)."""
        F = self.field
        for name in path:
            blk = self.block(name, d)
            vec = [sum((row[k] * vec[k] for k in range(len(vec))), F.zero) for row in blk]
            if F.p is not None:
                vec = [x % F.p for x in vec]
            d += self.quiver.arrow(name).degree
        return vec


def direct_sum(*reps: GradedRep) -> GradedRep:
    """Direct sum; bases are concatenated in argument order."""
    if not reps:
        raise RepError("empty direct sum")
    q, F = reps[0].quiver, reps[0].field
    for r in reps[1:]:
        if r.quiver != q or r.field != F:
            raise RepError("direct sum over different quivers or fields")
    spaces: dict[Key, int] = {}
    for r in reps:
        for k, n in r.spaces.items():
            spaces[k] = spaces.get(k, 0) + n
    maps = {}
    keys = {k for r in reps for k in r.maps}
    for name, d in keys:
        a = q.arrow(name)
        rows = spaces.get((a.target, d + a.degree), 0)
        cols = spaces.get((a.source, d), 0)
        blk = F.zeros(rows, cols)
        r0 = c0 = 0
        for r in reps:
            rr, cc = r.dim(a.target, d + a.degree), r.dim(a.source, d)
            sub = r.maps.get((name, d))
            if sub is not None:
                for i in range(rr):
                    blk[r0 + i][c0:c0 + cc] = sub[i]
            r0 += rr
            c0 += cc
        maps[(name, d)] = blk
    return GradedRep(q, F, spaces, maps)


def zero_rep(q: GradedQuiver, field: ExactField) -> GradedRep:
    return GradedRep(q, field, {}, {})


def simple(q: GradedQuiver, v: str, field: ExactField, degree: int = 0) -> GradedRep:
    return GradedRep(q, field, {(v, degree): 1}, {})


def paths_from(q: GradedQuiver, v: str) -> list[tuple[tuple[str, ...], str, int]]:
    """All directed paths starting at ``v`` as ``(arrow names, end vertex, degree)``."""
    if not is_acyclic(q):
        raise QuiverError("paths are only enumerated on acyclic quivers")
    out = []
    todo = [((), v, 0)]
    while todo:
        path, end, deg = todo.pop()
        out.append((path, end, deg))
        for a in q.outgoing(end):
            todo.append((path + (a.name,), a.target, deg + a.degree))
    out.sort()
    return out


def projective(q: GradedQuiver, v: str, field: ExactField, shift: int = 0) -> GradedRep:
    """``P_v(shift)``: basis the paths starting at ``v``, graded by path degree, then shifted.

    The generator of ``P_v(l)`` sits in degree ``-l``.
    """
    basis: dict[Key, list[tuple[str, ...]]] = {}
    for path, end, deg in paths_from(q, v):
        basis.setdefault((end, deg - shift), []).append(path)
    index = {k: {p: i for i, p in enumerate(ps)} for k, ps in basis.items()}
    maps = {}
    for (end, d), ps in basis.items():
        for a in q.outgoing(end):
            tgt = (a.target, d + a.degree)
            blk = maps.setdefault((a.name, d), field.zeros(len(basis[tgt]), len(ps)))
            for j, p in enumerate(ps):
                blk[index[tgt][p + (a.name,)]][j] = field.one
    return GradedRep(q, field, {k: len(ps) for k, ps in basis.items()}, maps)


def dual(M: GradedRep) -> GradedRep:
    """Graded vector-space dual, a representation of the opposite quiver.

    ``D(M)`` has ``D(M)_(v, d) = (M_(v, -d))*`` and transposed blocks.
    """
    qop = opposite(M.quiver)
    maps = {}
    for (name, d), blk in M.maps.items():
        e = M.quiver.arrow(name).degree
        maps[(name, -(d + e))] = [list(col) for col in zip(*blk)]
    return GradedRep(qop, M.field, {(v, -d): n for (v, d), n in M.spaces.items()}, maps)


def transport(M: GradedRep, target: GradedQuiver, vertex_map: Mapping[str, str],
              arrow_map: Mapping[str, str], potential: Mapping[str, int] | None = None) -> GradedRep:
    """Move M along a relabelling and then a potential shift of its quiver.

    ``target`` must equal the relabelled quiver with degrees shifted by
    ``potential`` (indexed by target vertices): ``deg' = deg + g(s) - g(t)``.
    The moved representation has ``M'_(v', d) = M_(v, d + g(v'))``.
    """
    g = potential or {}
    spaces = {}
    for (v, d), n in M.spaces.items():
        w = vertex_map[v]
        spaces[(w, d - g.get(w, 0))] = n
    maps = {}
    for (name, d), blk in M.maps.items():
        a = M.quiver.arrow(name)
        w = vertex_map[a.source]
        maps[(arrow_map[name], d - g.get(w, 0))] = blk
    out = GradedRep(target, M.field, spaces, maps)
    for (name, d), blk in M.maps.items():
        a = M.quiver.arrow(name)
        b = target.arrow(arrow_map[name])
        if b.source != vertex_map[a.source] or b.target != vertex_map[a.target]:
            raise RepError(f"arrow map sends {name} to an arrow with different endpoints")
        if b.degree != a.degree + g.get(b.source, 0) - g.get(b.target, 0):
            raise RepError(f"potential does not carry {name} to {b.name}")
    return out


# ---------------------------------------------------------------------------
# JSON


def rep_to_json(M: GradedRep, quiver_ref: str | None = None) -> dict:
    F = M.field
    spaces: dict[str, dict[str, int]] = {}
    for (v, d), n in sorted(M.spaces.items()):
        spaces.setdefault(v, {})[str(d)] = n
    maps: dict[str, dict[str, list]] = {}
    for (name, d), blk in sorted(M.maps.items()):
        maps.setdefault(name, {})[str(d)] = [[F.encode(x) for x in row] for row in blk]
    return {
        "quiver": quiver_ref if quiver_ref is not None else str(M.quiver),
        "field": {"Q": True} if F.p is None else {"Fp": F.p},
        "spaces": spaces,
        "maps": maps,
    }


def _field_from_json(obj) -> ExactField:
    if obj == "Q" or obj == {"Q": True} or obj == {"Q": None} or (isinstance(obj, dict) and set(obj) == {"Q"}):
        return ExactField()
    if isinstance(obj, dict) and "Fp" in obj:
        return ExactField(int(obj["Fp"]))
    if isinstance(obj, str):
        return ExactField.parse(obj)
    raise RepError(f"unrecognised field {obj!r}")


def rep_from_json(obj: dict, quiver: GradedQuiver | None = None, base_dir: Path | None = None) -> GradedRep:
    """Decode the representation format.

    ``obj["quiver"]`` is either inline quiver text (contains a newline or
    ``vertices:``) or a path relative to ``base_dir``.  An explicit ``quiver``
    argument takes precedence and must agree with any embedded one.
    """
    ref = obj.get("quiver")
    embedded = None
    if ref is not None:
        if "\n" in ref or ref.strip().startswith("vertices"):
            embedded = parse_quiver(ref)
        else:
            path = Path(ref) if base_dir is None else Path(base_dir) / ref
            embedded = parse_quiver(path.read_text(encoding="utf-8"))
    if quiver is None:
        if embedded is None:
            raise RepError("representation names no quiver")
        quiver = embedded
    elif embedded is not None and embedded != quiver:
        raise RepError("representation was written for a different quiver")
    F = _field_from_json(obj.get("field", "Q"))
    spaces = {}
    for v, per_deg in obj.get("spaces", {}).items():
        for d, n in per_deg.items():
            spaces[(v, int(d))] = int(n)
    maps = {}
    for name, per_deg in obj.get("maps", {}).items():
        for d, blk in per_deg.items():
            maps[(name, int(d))] = [[F(x) for x in row] for row in blk]
    return GradedRep(quiver, F, spaces, maps)


def load_rep(path: str | Path, quiver: GradedQuiver | None = None) -> GradedRep:
    path = Path(path)
    return rep_from_json(json.loads(path.read_text(encoding="utf-8")), quiver, path.parent)
