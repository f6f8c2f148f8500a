import itertools
import json
import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gqpa.quiver import Arrow, GradedQuiver, opposite
from gqpa.repcat import ExactField, GradedRep, RepError
from gqpa.repcat.homological import (
    check_pre_smc,
    endomorphisms_local,
    ext1_graded,
    ext_vanishing_shortcut,
    hom_ext_dims,
    hom_from_shape_dims,
    hom_graded,
    is_morphism,
    minimal_resolution,
    minimal_resolution_shape,
    resolution_is_exact,
    standard_resolution,
)
from gqpa.repcat.rep import direct_sum, dual, load_rep, projective, rep_from_json, rep_to_json, simple, transport

from helpers import quiver_with_reps, random_quiver, random_rep

F2 = ExactField(2)


def brute_force_hom_count(M, N, h):
    """Number of degree-h morphisms over a finite field, by enumerating every family of matrices."""
    F = M.field
    keys = [(v, d) for (v, d) in sorted(M.spaces) if N.dim(v, d + h)]
    shapes = [(N.dim(v, d + h), M.dim(v, d)) for v, d in keys]
    sizes = [r * c for r, c in shapes]
    count = 0
    for entries in itertools.product(F.elements(), repeat=sum(sizes)):
        f, pos = {}, 0
        for key, (r, c) in zip(keys, shapes):
            f[key] = [list(entries[pos + i * c: pos + (i + 1) * c]) for i in range(r)]
            pos += r * c
        count += is_morphism(f, M, N, h)
    return count


def a2():
    return GradedQuiver(("1", "2"), (Arrow("a", "1", "2", 0),))


def test_rep_validation():
    q = a2()
    with pytest.raises(RepError):
        GradedRep(q, ExactField(), {("3", 0): 1})
    with pytest.raises(RepError):
        GradedRep(q, ExactField(), {("1", 0): 1, ("2", 0): 1}, {("a", 0): [[1, 1]]})
    with pytest.raises(RepError):
        GradedRep(q, ExactField(), {("1", 0): -1})


def test_projective_of_a2():
    P1 = projective(a2(), "1", ExactField())
    assert P1.spaces == {("1", 0): 1, ("2", 0): 1}
    assert hom_graded(P1, P1).dims == {0: 1}


def test_shift_convention():
    P = projective(a2(), "1", ExactField(), shift=2)
    assert P.dim("1", -2) == 1
    M = simple(a2(), "1", ExactField(), degree=0)
    assert M.shift(3).dim("1", -3) == 1


@pytest.mark.parametrize("seed", range(12))
def test_hom_matches_enumeration_over_f2(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, rng.randint(1, 3), rng.randint(0, 1), (-1, 0))
    M = random_rep(rng, q, F2, max_dim=1, window=(-1, 0))
    N = random_rep(rng, q, F2, max_dim=2, window=(-1, 0), density=0.5)
    hom = hom_graded(M, N)
    for h in range(-2, 3):
        assert 2 ** hom.dim(h) == brute_force_hom_count(M, N, h)


@given(quiver_with_reps())
def test_hom_basis_elements_are_morphisms(data):
    q, (M, N) = data
    hom = hom_graded(M, N)
    for h, fs in hom.bases.items():
        assert len(fs) == hom.dims[h]
        for f in fs:
            assert is_morphism(f, M, N, h)


@given(quiver_with_reps(count=3))
def test_hom_additive(data):
    q, (M, M2, N) = data
    S = direct_sum(M, M2)
    a, b, c = hom_graded(M, N, basis=False), hom_graded(M2, N, basis=False), hom_graded(S, N, basis=False)
    assert Counter(a.dims) + Counter(b.dims) == Counter(c.dims)
    d = hom_graded(N, S, basis=False)
    assert Counter(hom_graded(N, M, basis=False).dims) + Counter(hom_graded(N, M2, basis=False).dims) == Counter(d.dims)


@given(quiver_with_reps(count=1), st.integers(-2, 2), st.data())
def test_projective_hom_identity(data, l, draw):
    q, (N,) = data
    v = draw.draw(st.sampled_from(q.vertices))
    P = projective(q, v, N.field, shift=l)
    hom = hom_graded(P, N, basis=False)
    for h in range(-5, 6):
        assert hom.dim(h) == N.dim(v, h - l)


@given(quiver_with_reps())
def test_resolutions_are_exact(data):
    q, (M, _) = data
    for res in (standard_resolution(M), minimal_resolution(M)):
        assert resolution_is_exact(res)
        for key in set(res.P0.spaces) | set(M.spaces):
            assert res.P0.dim(*key) == M.dim(*key) + res.P1.dim(*key)


@given(quiver_with_reps())
def test_minimal_shape_agrees_with_explicit_resolution(data):
    q, (M, _) = data
    p0, p1 = minimal_resolution_shape(M)
    res = minimal_resolution(M)
    assert p0 == Counter(res.p0_summands) and p1 == Counter(res.p1_summands)


@given(quiver_with_reps())
def test_euler_identity(data):
    q, (M, N) = data
    hom, ext = hom_ext_dims(M, N)
    res = standard_resolution(M)
    h0 = hom_from_shape_dims(Counter(res.p0_summands), N)
    h1 = hom_from_shape_dims(Counter(res.p1_summands), N)
    for h in set(hom) | set(ext) | set(h0) | set(h1):
        assert hom.get(h, 0) - ext.get(h, 0) == h0.get(h, 0) - h1.get(h, 0)


@given(quiver_with_reps())
def test_ext_methods_agree(data):
    q, (M, N) = data
    assert ext1_graded(M, N) == ext1_graded(M, N, method="resolution")


@given(quiver_with_reps())
def test_shortcut_agrees_on_its_domain(data):
    q, (M, N) = data
    if hom_graded(M, N, basis=False).negative_dims():
        with pytest.raises(RepError):
            ext_vanishing_shortcut(M, N)
        return
    vanishes = not any(h < 0 for h in ext1_graded(M, N))
    assert ext_vanishing_shortcut(M, N) == vanishes
    assert ext_vanishing_shortcut(M, N, resolution="standard") == vanishes


@given(quiver_with_reps())
def test_duality_and_shift(data):
    q, (M, N) = data
    base = hom_graded(M, N, basis=False).dims
    assert hom_graded(dual(N), dual(M), basis=False).dims == base
    assert hom_graded(M.shift(2), N.shift(2), basis=False).dims == base
    assert dual(dual(M)) == M and dual(M).quiver == opposite(q)


def test_transport_along_potential():
    q = a2()
    M = GradedRep(q, ExactField(), {("1", 0): 1, ("2", 0): 1}, {("a", 0): [[1]]})
    target = GradedQuiver(("x", "y"), (Arrow("b", "x", "y", -2),))
    out = transport(M, target, {"1": "x", "2": "y"}, {"a": "b"}, {"x": 0, "y": 2})
    assert out.spaces == {("x", 0): 1, ("y", -2): 1}
    with pytest.raises(RepError):
        transport(M, target, {"1": "x", "2": "y"}, {"a": "b"}, {"x": 0, "y": 0})


def test_incompatible_reps_raise():
    q = a2()
    M = simple(q, "1", ExactField())
    with pytest.raises(RepError):
        hom_graded(M, simple(q, "1", ExactField(5)))
    with pytest.raises(RepError):
        hom_graded(M, simple(opposite(q), "1", ExactField()))


@given(quiver_with_reps(count=1, field=ExactField(7)))
def test_json_roundtrip(data):
    q, (M,) = data
    assert rep_from_json(json.loads(json.dumps(rep_to_json(M)))) == M


def test_load_rep_with_relative_quiver(tmp_path):
    (tmp_path / "a2.quiver").write_text(str(a2()))
    M = simple(a2(), "2", ExactField())
    (tmp_path / "m.json").write_text(json.dumps(rep_to_json(M, "a2.quiver")))
    assert load_rep(tmp_path / "m.json") == M


def test_check_pre_smc_simples():
    q = a2()
    report = check_pre_smc([simple(q, "1", ExactField()), simple(q, "2", ExactField())])
    assert report.passed and report.size == 2
    # Ext^1(S1, S2) lives in degree 0; moving S2 down one degree makes it negative
    bad = check_pre_smc([simple(q, "1", ExactField()), simple(q, "2", ExactField(), degree=-1)])
    assert bad.violation.condition == "negative_ext1"


def test_endomorphisms_local():
    q = a2()
    assert endomorphisms_local(projective(q, "1", F2))
    S = direct_sum(simple(q, "1", F2), simple(q, "2", F2))
    assert not endomorphisms_local(S)
