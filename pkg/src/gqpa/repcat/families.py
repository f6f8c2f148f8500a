"""Explicit one-parameter families of graded bricks on the core quivers.

Each builder returns a covariant representation of the displayed quiver
(maps follow the arrows).  Distinct parameters give members with no
morphisms between them, and the whole family is checked with
:func:`gqpa.repcat.homological.check_pre_smc`.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence

from ..quiver import Arrow, GradedQuiver
from .field import ExactField
from .rep import GradedRep


class UnsupportedParameters(ValueError):
    """No explicit construction is available for the requested parameters."""


def _nonzero(F: ExactField, lam):
    x = F(lam)
    if not x:
        raise ValueError("the parameter must be a nonzero field element")
    return x


def case_a_quiver(n: int = 1) -> GradedQuiver:
    """``1 => 2 -> 3`` with the parallel pair in degrees ``0`` and ``-n``."""
    return GradedQuiver.from_arrows(
        ["1", "2", "3"],
        [Arrow("a", "1", "2", 0), Arrow("b", "1", "2", -n), Arrow("c", "2", "3", 0)],
    )


def case_b_quiver(m: int, n: int) -> GradedQuiver:
    """``1 => 2 <= 3`` with pairs ``{0, -m}`` from 1 and ``{0, -n}`` from 3."""
    return GradedQuiver.from_arrows(
        ["1", "2", "3"],
        [Arrow("a", "1", "2", 0), Arrow("b", "1", "2", -m),
         Arrow("c", "3", "2", 0), Arrow("e", "3", "2", -n)],
    )


def kronecker_quiver(degrees: Sequence[int]) -> GradedQuiver:
    """Two vertices with one arrow ``k<i>: 1 -> 2`` per listed degree."""
    return GradedQuiver.from_arrows(
        ["1", "2"], [Arrow(f"k{i}", "1", "2", d) for i, d in enumerate(degrees)]
    )


def build_L_case_a(lam, field: ExactField | None = None, n: int = 1) -> GradedRep:
    """Thirteen-dimensional brick on ``1 => 2 -> 3`` (degrees 0, -1, 0)."""
    F = field or ExactField()
    if n != 1:
        raise UnsupportedParameters(f"case (a) needs n = 1, got n = {n}")
    lam = _nonzero(F, lam)
    q = case_a_quiver(1)
    spaces = {
        ("1", 0): 1, ("1", -1): 2, ("1", -2): 2,
        ("2", 0): 1, ("2", -1): 2, ("2", -2): 2, ("2", -3): 1,
        ("3", -1): 1, ("3", -2): 1,
    }
    I2 = F.identity(2)
    maps = {
        ("a", 0): [[1]], ("a", -1): I2, ("a", -2): I2,
        ("b", 0): [[1], [lam]], ("b", -1): I2, ("b", -2): [[0, 1]],
        ("c", -1): [[1, 0]], ("c", -2): [[1, -1]],
    }
    return GradedRep(q, F, spaces, maps)


def _check_coprime(m: int, n: int) -> None:
    if not (0 < m <= n):
        raise ValueError(f"need 0 < m <= n, got m={m}, n={n}")
    if gcd(m, n) != 1:
        raise UnsupportedParameters(f"gcd(m, n) = {gcd(m, n)} > 1")


def build_L_case_b(lam, m: int, n: int, field: ExactField | None = None) -> GradedRep:
    """Brick on ``1 => 2 <= 3`` with pairs ``{0, -m}`` and ``{0, -n}``.

    Basis: ``x_l`` and ``y_l`` at ``(1, -l)`` and ``(2, -l)`` for ``l < m + n``,
    ``z_l`` at ``(3, -l)`` for ``l < m``.  Every arrow sends a basis vector to a
    basis vector (``b`` only while the target exists), with ``lam`` on ``a`` at ``x_0``.
    """
    F = field or ExactField()
    _check_coprime(m, n)
    lam = _nonzero(F, lam)
    q = case_b_quiver(m, n)
    spaces = {}
    spaces.update({("1", -l): 1 for l in range(m + n)})
    spaces.update({("2", -l): 1 for l in range(m + n)})
    spaces.update({("3", -l): 1 for l in range(m)})
    maps = {}
    for l in range(m + n):
        maps[("a", -l)] = [[lam if l == 0 else 1]]
        if l < n:
            maps[("b", -l)] = [[1]]
    for l in range(m):
        maps[("c", -l)] = [[1]]
        maps[("e", -l)] = [[1]]
    return GradedRep(q, F, spaces, maps)


def build_L_case_c(lam, m: int, n: int, field: ExactField | None = None) -> GradedRep:
    """Brick on the 3-Kronecker with degrees ``0, -m, -n``.

    Basis ``x_l`` at ``(1, -l)`` for ``l < n`` and ``y_d`` at ``(2, -d)`` for
    ``d < m + n``; ``k0, k1, k2`` shift the index by ``0, m, n``, ``k2`` only
    where the target exists, and ``lam`` sits on ``k1`` at ``x_(n-1)``.
    """
    F = field or ExactField()
    _check_coprime(m, n)
    lam = _nonzero(F, lam)
    return _case_c(F, lam, m, n, kronecker_quiver([0, -m, -n]))


def _case_c(F: ExactField, lam, m: int, n: int, q: GradedQuiver) -> GradedRep:
    spaces = {("1", -l): 1 for l in range(n)}
    spaces.update({("2", -d): 1 for d in range(m + n)})
    maps = {}
    for l in range(n):
        maps[("k0", -l)] = [[1]]
        maps[("k1", -l)] = [[lam if l == n - 1 else 1]]
        if l < m:
            maps[("k2", -l)] = [[1]]
    return GradedRep(q, F, spaces, maps)


def build_L_special(lam, degrees: Sequence[int], field: ExactField | None = None) -> GradedRep:
    """The 3-Kronecker brick for ``(a1, a2)`` extended by zero to ``K_(0, -a1, ..., -ak)``."""
    F = field or ExactField()
    a = list(degrees)
    if len(a) < 2:
        raise ValueError("need at least two positive degrees")
    if any(x <= 0 for x in a) or a != sorted(a):
        raise ValueError(f"degrees must be positive and non-decreasing, got {a}")
    if len(a) > 2 and a[0] + a[1] < a[2]:
        raise ValueError(f"need a1 + a2 >= a3, got {a[0]} + {a[1]} < {a[2]}")
    _check_coprime(a[0], a[1])
    lam = _nonzero(F, lam)
    return extend_by_zero(_case_c(F, lam, a[0], a[1], kronecker_quiver([0, -a[0], -a[1]])),
                          kronecker_quiver([0] + [-x for x in a]))


def build_L_kron_deg0(lam, k: int = 2, field: ExactField | None = None) -> GradedRep:
    """Regular brick ``k -> k`` in degree 0 on the ungraded k-Kronecker, maps ``(1, lam, 0, ...)``."""
    F = field or ExactField()
    if k < 2:
        raise ValueError("need at least two arrows")
    lam = _nonzero(F, lam)
    q = kronecker_quiver([0] * k)
    maps = {("k0", 0): [[1]], ("k1", 0): [[lam]]}
    return GradedRep(q, F, {("1", 0): 1, ("2", 0): 1}, maps)


def extend_by_zero(M: GradedRep, q: GradedQuiver) -> GradedRep:
    """View M on a quiver with the same vertices and extra arrows acting by zero."""
    for a in M.quiver.arrows:
        if q.arrow(a.name) != a:
            raise ValueError(f"arrow {a.name} differs on the larger quiver")
    return GradedRep(q, M.field, M.spaces, M.maps)


def family(case: str, params: Sequence[int], lambdas: Sequence, field: ExactField) -> list[GradedRep]:
    """Build the family for one case name: ``a``, ``b``, ``c``, ``special`` or ``deg0``."""
    if case == "a":
        n = params[0] if params else 1
        return [build_L_case_a(x, field, n) for x in lambdas]
    if case == "b":
        m, n = params
        return [build_L_case_b(x, m, n, field) for x in lambdas]
    if case == "c":
        m, n = params
        return [build_L_case_c(x, m, n, field) for x in lambdas]
    if case == "special":
        return [build_L_special(x, params, field) for x in lambdas]
    if case == "deg0":
        k = params[0] if params else 2
        return [build_L_kron_deg0(x, k, field) for x in lambdas]
    raise ValueError(f"unknown case {case!r}")


def family_quiver(case: str, params: Sequence[int]) -> GradedQuiver:
    if case == "a":
        return case_a_quiver(params[0] if params else 1)
    if case == "b":
        return case_b_quiver(*params)
    if case == "c":
        return kronecker_quiver([0, -params[0], -params[1]])
    if case == "special":
        return kronecker_quiver([0] + [-x for x in params])
    if case == "deg0":
        return kronecker_quiver([0] * (params[0] if params else 2))
    raise ValueError(f"unknown case {case!r}")
