from math import gcd

import pytest

from gqpa.quiver import parse_quiver
from gqpa.reduce import reduce_to_core
from gqpa.repcat import ExactField
from gqpa.repcat.families import (
    UnsupportedParameters,
    build_L_case_a,
    build_L_case_b,
    build_L_case_c,
    build_L_kron_deg0,
    build_L_special,
    extend_by_zero,
    family,
    family_quiver,
    kronecker_quiver,
)
from gqpa.repcat.homological import check_pre_smc, resolution_is_exact, standard_resolution

Q = ExactField()
F101 = ExactField(101)
LAMBDAS = [1, 2, 3, 4, 5]


def test_case_a_dimensions():
    L = build_L_case_a(2)
    assert L.total_dim == 13
    assert sum(n for (v, _), n in L.spaces.items() if v == "1") == 5


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 3), (3, 4), (1, 4), (3, 5)])
def test_case_b_shape_and_family(m, n):
    L = build_L_case_b(7, m, n)
    assert {d for (v, d) in L.spaces if v == "1"} == set(range(-(m + n - 1), 1))
    assert {d for (v, d) in L.spaces if v == "2"} == set(range(-(m + n - 1), 1))
    assert {d for (v, d) in L.spaces if v == "3"} == set(range(-(m - 1), 1))
    assert check_pre_smc(family("b", (m, n), [1, 2, 3], Q)).passed


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 3), (3, 4), (2, 5), (3, 7)])
def test_case_c_family(m, n):
    L = build_L_case_c(1, m, n)
    assert sum(n_ for (v, _), n_ in L.spaces.items() if v == "1") == n
    assert sum(n_ for (v, _), n_ in L.spaces.items() if v == "2") == m + n
    assert check_pre_smc(family("c", (m, n), [1, 2, 3], Q)).passed


@pytest.mark.parametrize("field", [Q, F101], ids=str)
def test_every_builder_passes_over_both_fields(field):
    cases = [("a", (1,)), ("b", (1, 2)), ("c", (2, 3)), ("special", (1, 2, 2)), ("deg0", (2,)), ("deg0", (3,))]
    for case, params in cases:
        report = check_pre_smc(family(case, params, LAMBDAS, field))
        assert report.passed, (case, params, report.violation)


@pytest.mark.parametrize("builder, args", [
    (build_L_case_a, (1, None, 2)),
    (build_L_case_b, (1, 2, 4)),
    (build_L_case_c, (1, 2, 4)),
    (build_L_special, (1, (2, 4, 4))),
])
def test_unsupported_parameters(builder, args):
    with pytest.raises(UnsupportedParameters):
        builder(*args)


def test_special_hypothesis_enforced():
    with pytest.raises(ValueError, match="a1 \\+ a2 >= a3"):
        build_L_special(1, (1, 2, 4))


def test_zero_parameter_rejected():
    with pytest.raises(ValueError):
        build_L_case_a(0)
    with pytest.raises(ValueError):
        build_L_kron_deg0(101, 2, F101)


def test_resolutions_of_members_are_exact():
    for case, params in [("a", (1,)), ("b", (2, 3)), ("c", (3, 4)), ("special", (1, 2, 2))]:
        (L,) = family(case, params, [3], F101)
        assert resolution_is_exact(standard_resolution(L))
        assert resolution_is_exact(standard_resolution(L, minimal=True))


def test_extend_by_zero_checks_arrows():
    L = build_L_case_c(1, 1, 2)
    big = kronecker_quiver([0, -1, -2, -2])
    assert extend_by_zero(L, big).quiver == big
    with pytest.raises(ValueError):
        extend_by_zero(L, kronecker_quiver([0, -1, -3, -3]))


def test_family_quiver_matches_members():
    for case, params in [("a", (1,)), ("b", (1, 2)), ("c", (1, 2)), ("special", (1, 2, 3)), ("deg0", (3,))]:
        (L,) = family(case, params, [1], Q)
        assert L.quiver == family_quiver(case, params)


# -- the zero extension for four or more arrows --------------------------------


def special_passes(degrees):
    return check_pre_smc([build_L_special(x, degrees, F101) for x in (1, 2)]).passed


def test_special_counterexample():
    # satisfies a1 + a2 >= a3 yet the zero extension has negative Ext^1
    report = check_pre_smc([build_L_special(x, (2, 3, 3), Q) for x in (1, 2)])
    assert not report.passed
    assert report.violation.condition == "negative_ext1" and report.violation.degree == -1


def test_special_sweep_threshold():
    for a1 in range(1, 4):
        for a2 in range(a1, 5):
            if gcd(a1, a2) != 1:
                continue
            for a3 in range(a2, a1 + a2 + 1):
                assert special_passes((a1, a2, a3)) == (a3 >= a1 + a2 - 1), (a1, a2, a3)


def test_special_with_more_arrows():
    assert special_passes((1, 2, 2, 3))
    assert special_passes((2, 3, 4, 5))


# -- witnesses on reduction terminals ----------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
def test_witness_on_worked_examples(data_dir, k):
    trace = reduce_to_core(parse_quiver((data_dir / f"reduction_example_{k}.quiver").read_text()))
    shape = trace.terminal
    assert shape.witness_available
    reps = shape.witness_family([1, 2, 3], F101)
    assert all(M.quiver == shape.matched_quiver for M in reps)
    assert check_pre_smc(reps).passed
