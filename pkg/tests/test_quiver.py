import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gqpa.quiver import (
    Arrow,
    GradedQuiver,
    QuiverError,
    QuiverParseError,
    apply_potential,
    connected,
    cycle_degree_totals,
    degree_zero_part,
    dynkin_normalization,
    graph_type,
    is_acyclic,
    normalize,
    opposite,
    parse_quiver,
    serialize_quiver,
)

from helpers import quivers, random_quiver


def cartan_positive_definite(q: GradedQuiver) -> bool:
    """Sylvester's criterion on 2I - A; for connected graphs this is exactly ADE."""
    vs = list(q.vertices)
    n = len(vs)
    idx = {v: k for k, v in enumerate(vs)}
    m = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for a in q.arrows:
        i, j = idx[a.source], idx[a.target]
        m[i][j] -= 1
        m[j][i] -= 1
    # leading principal minors via fraction-exact elimination
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            for c in range(k, n):
                m[r][c] -= f * m[k][c]
    return True


def is_simple_cycle(q: GradedQuiver) -> bool:
    deg = {v: 0 for v in q.vertices}
    for a in q.arrows:
        if a.source == a.target:
            return False
        deg[a.source] += 1
        deg[a.target] += 1
    return len(q.arrows) == len(q.vertices) and all(d == 2 for d in deg.values())


TRIANGLE = """vertices: 1 2 3
arrow a: 1 -> 2 deg 0
arrow b: 2 -> 3 deg -1
arrow c: 1 -> 3 deg 0
"""


def test_parse_and_serialize_triangle():
    q = parse_quiver(TRIANGLE)
    assert q.vertices == ("1", "2", "3")
    assert parse_quiver(serialize_quiver(q)) == q


def test_single_vertex_serializes_to_one_line():
    q = parse_quiver("vertices: x\n")
    assert serialize_quiver(q) == "vertices: x\n"


def test_parallel_arrows_keep_distinct_names():
    q = parse_quiver("vertices: 1 2\narrow a: 1 -> 2 deg 0\narrow b: 1 -> 2 deg -1\n")
    text = serialize_quiver(q)
    assert "arrow a:" in text and "arrow b:" in text


@pytest.mark.parametrize("text, fragment", [
    ("vertices: 1 2\narrow a: 1 -> 2 deg 0\narrow a: 2 -> 1 deg 0\n", "duplicate arrow"),
    ("vertices: 1\narrow a: 1 -> 2 deg 0\n", "undeclared vertex"),
    ("vertices: 1 2\narrow a: 1 -> 2 deg x\n", "malformed degree"),
    ("vertices: 1 2\narrow a 1 -> 2\n", "expected"),
    ("arrow a: 1 -> 2 deg 0\n", "vertices"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(QuiverParseError) as exc:
        parse_quiver(text)
    assert fragment in str(exc.value)


def test_parse_error_reports_line():
    with pytest.raises(QuiverParseError) as exc:
        parse_quiver("vertices: 1 2\n\narrow a: 1 -> 2 deg q\n")
    assert "3" in str(exc.value)


@given(quivers())
def test_roundtrip(q):
    assert parse_quiver(serialize_quiver(q)) == q


def test_acyclic_and_connected():
    cyc = parse_quiver("vertices: 1 2\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 0\n")
    assert not is_acyclic(cyc)
    assert is_acyclic(parse_quiver(TRIANGLE))
    assert not connected(parse_quiver("vertices: 1 2\n"))


@pytest.mark.parametrize("edges, label", [
    ([("1", "2"), ("2", "3"), ("3", "4")], "A4"),
    ([("1", "2"), ("2", "3"), ("2", "4"), ("4", "5")], "D5"),
    ([("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("3", "6")], "E6"),
    ([("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("4", "7")], "E7"),
    ([("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("6", "7"), ("3", "8")], "E8"),
    ([("1", "2"), ("1", "3"), ("1", "4"), ("1", "5")], "Other"),
    ([("1", "2"), ("2", "3"), ("3", "1")], "Atilde(3)"),
    ([("1", "2"), ("1", "2")], "Atilde(2)"),
    ([("1", "2"), ("1", "2"), ("1", "2")], "Other"),
])
def test_graph_type_labels(edges, label):
    arrows = [Arrow(f"e{k}", u, v, 0) for k, (u, v) in enumerate(edges)]
    q = GradedQuiver(tuple(sorted({v for e in edges for v in e})), tuple(arrows))
    assert graph_type(q).label == label


@given(quivers(max_vertices=8, max_extra=2))
def test_graph_type_matches_cartan_oracle(q):
    t = graph_type(q)
    simple = len({frozenset((a.source, a.target)) for a in q.arrows}) == len(q.arrows)
    if simple and len(q.arrows) == len(q.vertices) - 1:
        assert t.is_dynkin == cartan_positive_definite(q)
    assert (t.family == "Atilde") == is_simple_cycle(q)
    if t.is_dynkin:
        assert simple and len(q.arrows) == len(q.vertices) - 1


@given(quivers(), st.data())
def test_potential_invariance(q, data):
    g = {v: data.draw(st.integers(-5, 5)) for v in q.vertices}
    shifted = apply_potential(q, g)
    assert graph_type(shifted) == graph_type(q)
    if graph_type(q).family == "Atilde":
        a, b = cycle_degree_totals(q)
        a2, b2 = cycle_degree_totals(shifted)
        assert a2 - b2 == a - b
    back = apply_potential(shifted, {v: -x for v, x in g.items()})
    assert back == q


def test_cycle_totals_shift_together():
    q = GradedQuiver(("1", "2"), (Arrow("x0", "1", "2", 2), Arrow("x1", "1", "2", 1)))
    assert cycle_degree_totals(q) == (2, 1)
    assert cycle_degree_totals(apply_potential(q, {"1": 0, "2": 1})) == (1, 0)


def test_apply_potential_examples():
    q = GradedQuiver(("1", "2"), (Arrow("a", "1", "2", -3),))
    assert apply_potential(q, {"1": 0, "2": -3}).arrows[0].degree == 0
    assert apply_potential(q, {"1": 0, "2": 0}) == q


@given(quivers())
def test_graph_type_of_opposite(q):
    assert graph_type(opposite(q)).label == graph_type(q).label
    assert opposite(opposite(q)) == q


@given(quivers(max_vertices=7, degrees=(-3, 3)))
def test_normalize(q):
    nq, g, ok = normalize(q)
    assert all(a.degree <= 0 for a in nq.arrows)
    assert apply_potential(q, g) == nq
    assert ok and connected(degree_zero_part(nq))


def test_normalize_fixed_input_is_unchanged():
    q = parse_quiver(TRIANGLE)
    nq, g, ok = normalize(q)
    assert nq == q and set(g.values()) == {0} and ok


def test_normalize_rejects_bad_input():
    with pytest.raises(QuiverError):
        normalize(parse_quiver("vertices: 1 2\n"))
    with pytest.raises(QuiverError):
        normalize(parse_quiver("vertices: 1 2\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 0\n"))


@given(quivers(max_vertices=6, max_extra=3, degrees=(-3, 3)))
def test_dynkin_normalization_output(q):
    g = dynkin_normalization(q)
    if g is None:
        return
    shifted = apply_potential(q, g)
    zero = degree_zero_part(shifted)
    assert all(a.degree <= 0 for a in shifted.arrows)
    assert connected(zero) and graph_type(zero).is_dynkin


def test_dynkin_normalization_is_opposite_invariant():
    rng = random.Random(11)
    for _ in range(80):
        q = random_quiver(rng, rng.randint(2, 6), rng.randint(0, 3), (-2, 2))
        assert (dynkin_normalization(q) is None) == (dynkin_normalization(opposite(q)) is None)
