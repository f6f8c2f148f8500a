"""Decide silting-discreteness of a graded path algebra from its quiver.

A connected acyclic graded quiver is discrete exactly when its underlying
graph is a Dynkin tree, or an extended type A cycle whose clockwise and
counter-clockwise degree totals differ.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .qtilde import build_qtilde, dynkin_decompose, positive_root_count
from .quiver import (
    GradedQuiver,
    MultiGraphType,
    QuiverError,
    connected,
    cycle_degree_totals,
    dynkin_normalization,
    graph_type,
    is_acyclic,
    normalize,
)

REASONS = ("ADE", "AtildeUnequalTotals", "AtildeEqualTotals", "GraphOther", "DegreeZeroPartNotDynkin")


@dataclass(frozen=True)
class ClassificationVerdict:
    discrete: bool
    reason: str
    graph_type: MultiGraphType
    normalized_quiver: GradedQuiver
    totals: tuple[int, int] | None = None
    witness_hint: str | None = None

    def to_json(self) -> dict:
        out = {
            "discrete": self.discrete,
            "reason": self.reason,
            "graph_type": self.graph_type.label,
            "normalized_quiver": str(self.normalized_quiver),
        }
        if self.totals is not None:
            out["totals"] = list(self.totals)
        if self.witness_hint is not None:
            out["witness_hint"] = self.witness_hint
        return out


def _check_input(q: GradedQuiver) -> None:
    if not connected(q):
        raise QuiverError("classification needs a connected quiver")
    if not is_acyclic(q):
        raise QuiverError("classification needs an acyclic quiver")


def _no_dynkin_zero_part(q: GradedQuiver) -> bool:
    try:
        return dynkin_normalization(q) is None
    except ValueError:  # too many spanning trees to rule one out
        return False


def classify(q: GradedQuiver) -> ClassificationVerdict:
    _check_input(q)
    t = graph_type(q)
    nq, _, _ = normalize(q)
    if t.is_dynkin:
        return ClassificationVerdict(True, "ADE", t, nq)
    hint = "reduce"
    if t.family == "Atilde":
        totals = cycle_degree_totals(q)
        if totals[0] != totals[1]:
            return ClassificationVerdict(True, "AtildeUnequalTotals", t, nq, totals)
        return ClassificationVerdict(False, "AtildeEqualTotals", t, nq, totals, hint)
    if _no_dynkin_zero_part(q):
        return ClassificationVerdict(False, "DegreeZeroPartNotDynkin", t, nq, None, hint)
    return ClassificationVerdict(False, "GraphOther", t, nq, None, hint)


def is_discrete(q: GradedQuiver) -> bool:
    """The bare criterion, without normalization or reasons."""
    t = graph_type(q)
    if t.is_dynkin:
        return True
    if t.family == "Atilde":
        a, b = cycle_degree_totals(q)
        return a != b
    return False


# ---------------------------------------------------------------------------
# truncation levels


@dataclass(frozen=True)
class LevelReport:
    n: int
    dynkin_union: bool
    components: tuple[tuple[tuple[str, ...], str, int | None], ...]  # (vertices, type, roots)

    @property
    def total(self) -> int | None:
        if not self.dynkin_union:
            return None
        return sum(r for _, _, r in self.components)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dynkin_union": self.dynkin_union,
            "components": [
                {"vertices": list(v), "type": t, "roots": r} for v, t, r in self.components
            ],
            "total": self.total,
        }


@dataclass(frozen=True)
class ConditionTwoReport:
    verdict: ClassificationVerdict
    levels: tuple[LevelReport, ...] = field(default_factory=tuple)

    @property
    def first_failure(self) -> int | None:
        return next((lv.n for lv in self.levels if not lv.dynkin_union), None)

    @property
    def consistent(self) -> bool | None:
        """False on a contradiction; None when a non-discrete quiver shows no failure yet."""
        if self.verdict.discrete:
            return self.first_failure is None
        return True if self.first_failure is not None else None


def level_report(q: GradedQuiver, n: int) -> LevelReport:
    comps = []
    for c in dynkin_decompose(build_qtilde(q, n)):
        roots = positive_root_count(c.type) if c.is_dynkin else None
        comps.append((c.vertices, c.type.label, roots))
    return LevelReport(n, all(r is not None for _, _, r in comps), tuple(comps))


def check_condition_two(q: GradedQuiver, n_max: int) -> ConditionTwoReport:
    """Truncation-level Dynkin check for ``n = 0..n_max`` on the normalized quiver."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    verdict = classify(q)
    nq = verdict.normalized_quiver
    return ConditionTwoReport(verdict, tuple(level_report(nq, n) for n in range(n_max + 1)))
