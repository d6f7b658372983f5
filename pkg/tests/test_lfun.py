import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aszeta.arithfns import matrix_A
from aszeta.lfun import (
    CurveSpec,
    classification,
    InfeasibleError,
    PeriodReport,
    assemble,
    count_points_exhaustive,
    determine_period,
    factored_modified_sum,
    l_from_counts,
    modified_sum,
    predict_epsilon,
    random_spec,
    sign_convention_check,
    solve_mults,
    solve_mults_odd,
)
from aszeta.fieldtower import FieldError
from aszeta.zsqrt2 import SQRT2, ZSqrt2, cyclo_split


def test_spec_validation():
    with pytest.raises(FieldError):
        CurveSpec.default(1, ())
    with pytest.raises(FieldError):
        CurveSpec.default(1, (1, 0))
    assert CurveSpec.default(1, (0, 1, 1)).genus == 2


@pytest.mark.parametrize("n,expected", [(1, SQRT2), (4, ZSqrt2(-2)), (12, ZSqrt2(4)), (2, ZSqrt2(0))])
def test_modified_sums_suzuki(suzuki1, n, expected):
    assert modified_sum(suzuki1, n) == expected


def test_period_suzuki(suzuki1):
    rep = determine_period(suzuki1)
    assert (rep.N, rep.N_odd, rep.a) == (6, 3, 1)
    assert (rep.eps_N, rep.eps_2N, rep.D, rep.case_tag) == (0, 1, 24, "iiib")


def test_multiplicities_suzuki(suzuki1):
    ms = solve_mults(suzuki1, determine_period(suzuki1))
    assert ms.M_plus == {8: 0, 24: Fraction(1, 2)}
    assert ms.M_minus == {8: 0, 24: Fraction(-1, 2)}
    assert ms.plain == {} and ms.split == {24: (0, 1)}
    assert ms.degree() == 4


def test_opposite_sign_reconstructs_wrong_s1(suzuki1):
    # the +S_n* right-hand side gives m+_24 = 1, m-_24 = 0 which reconstructs S_1 = -2
    ms = solve_mults_odd(suzuki1, determine_period(suzuki1), sign=1)
    assert ms.split == {24: (1, 0)}
    assert factored_modified_sum(ms, 1) == -SQRT2


@pytest.mark.parametrize("n,expected", [(5, -1), (2, 0), (8, 1), (1, 1), (4, -1), (12, 1)])
def test_predict_epsilon_suzuki(suzuki1, n, expected):
    assert predict_epsilon(determine_period(suzuki1), n) == expected


def test_assemble_suzuki(suzuki1):
    r = assemble(suzuki1, counts_upto=8)
    assert r.L == [1, 2, 2, 4, 4]
    assert r.Lstar == cyclo_split(24)[1]
    assert [r.point_counts[n] for n in range(1, 5)] == [5, 5, 17, 9]
    assert r.zeta_denominator == [1, -3, 2]


def test_x_squared_over_f4():
    spec = CurveSpec.default(2, (0, 1))
    r = assemble(spec, counts_upto=4)
    assert (r.period.case_tag, r.period.D) == ("ii", 2)
    assert r.mults.plain == {2: 2}
    assert r.L == [1, 4, 4]
    assert [r.point_counts[n] for n in range(1, 5)] == [count_points_exhaustive(spec, n) for n in range(1, 5)]


def test_newton_identities_round_trip(suzuki1):
    counts = [count_points_exhaustive(suzuki1, n) for n in range(1, 5)]
    assert l_from_counts(suzuki1, counts) == [1, 2, 2, 4, 4]


def test_dimension_ceiling(suzuki1):
    with pytest.raises(InfeasibleError):
        determine_period(suzuki1, dim_ceiling=8)


def test_planted_period_round_trip():
    # plant multiplicities on case i with N = 3, recover them from the S_n* they induce
    planted = {1: Fraction(0), 3: Fraction(2)}
    A = matrix_A(3).as_lists()
    S = [-sum(a * planted[l] for a, l in zip(row, (1, 3))) for row in A]
    rep = PeriodReport(N=3, N_odd=3, a=0, c_table={1: 0, 3: 0, 2: 0, 6: 0},
                       eps_table={1: int(S[0]), 3: int(S[1]), 2: 1, 6: 1},
                       eps_N=-1, eps_2N=1, D=3, case_tag="i", m=2)
    from aszeta.lfun import _plus_system

    assert _plus_system(rep, lambda s: s.a) == planted


def test_sign_convention_record(suzuki1):
    sc = sign_convention_check(suzuki1)
    assert sc["brute_S1"] == 2 and sc["adopted"] == "minus"
    assert sc["conventions"]["minus"]["matches_brute"]
    assert not sc["conventions"]["plus"]["matches_brute"]


@settings(max_examples=25)
@given(st.sampled_from([1, 2]), st.integers(1, 3), st.integers(0, 2**32))
def test_end_to_end_counts_random(m, d, seed):
    spec = random_spec(random.Random(seed), m, d)
    r = assemble(spec, counts_upto=16 // m)
    assert len(r.L) == (1 << d) + 1 and r.L[0] == 1
    for n in range(1, 16 // m + 1):
        assert r.point_counts[n] == count_points_exhaustive(spec, n)
    if m % 2 == 0:
        assert all(c.b == 0 for c in r.Lstar.coeffs)
        assert not r.mults.split


@settings(max_examples=20)
@given(st.sampled_from([1, 2]), st.integers(1, 3), st.integers(0, 2**32))
def test_predictions_match_classification(m, d, seed):
    spec = random_spec(random.Random(seed), m, d)
    rep = determine_period(spec)
    for n in range(1, min(3 * rep.D, 600 // m) + 1):
        assert predict_epsilon(rep, n) == classification(spec, n).epsilon
        assert rep.c_of(n) == classification(spec, n).c
