import pytest

from aszeta.arithfns import chi
from aszeta.lfun import CurveSpec, determine_period, predict_epsilon, solve_mults
from aszeta.linearized import AdditivePoly
from aszeta.quadform import brute_sum
from aszeta.suzuki import (
    SuzukiParams,
    suzuki_c,
    suzuki_curve_count,
    suzuki_curve_count_exhaustive,
    suzuki_epsilon,
    suzuki_sum,
    suzuki_sum_exhaustive,
)


def test_params():
    p = SuzukiParams(1)
    assert (p.q0, p.q, p.d) == (2, 8, 2)
    assert p.R_coeffs == (0, 1, 1)
    with pytest.raises(ValueError):
        SuzukiParams(0)


@pytest.mark.parametrize("n,eps", [(1, 1), (2, 0), (3, 1), (4, -1), (5, -1), (8, 1)])
def test_epsilon_h1(n, eps):
    assert suzuki_epsilon(1, n) == eps


def test_c_h1():
    assert [suzuki_c(1, n) for n in (1, 2, 3, 4, 6)] == [1, 2, 3, 2, 4]


@pytest.mark.parametrize("h", [1, 2])
def test_sums_match_enumeration(h):
    for n in range(1, 15):
        assert suzuki_sum(h, n) == suzuki_sum_exhaustive(h, n)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_odd_divisor_sums(h):
    # n | 2h+1 makes f vanish on F_{2^n}, so S_n = 2^n
    n = 2 * h + 1
    assert suzuki_sum(h, n) == 1 << n
    assert suzuki_sum(h, 1) == 2


def test_sums_match_generic_brute_sum():
    R = AdditivePoly(CurveSpec.default(1, (0, 0, 1, 1)).base(), (0, 0, 1, 1))
    for n in range(1, 13):
        assert suzuki_sum(2, n) == brute_sum(R, n)


def test_curve_counts_h1():
    assert [suzuki_curve_count(1, n) for n in range(1, 5)] == [5, 5, 65, 9]
    for n in range(1, 9):
        assert suzuki_curve_count(1, n) == suzuki_curve_count_exhaustive(1, n)


def test_enumeration_bound():
    with pytest.raises(RuntimeError):
        suzuki_curve_count_exhaustive(1, 30)


@pytest.mark.parametrize("h", [1, 2])
def test_generic_pipeline_agreement(h):
    spec = CurveSpec.default(1, SuzukiParams(h).R_coeffs)
    rep = determine_period(spec)
    assert (rep.N, rep.D, rep.case_tag) == (4 * h + 2, 16 * h + 8, "iiib")
    for n in range(1, 101):
        assert predict_epsilon(rep, n) == suzuki_epsilon(h, n)
        assert rep.c_of(n) == suzuki_c(h, n)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_negative_multiplicities_relation(h):
    # M-_{8l} = -chi(l) chi(2h+1) M+_{8l}; the overall minus is what the exhaustive S_1 forces
    spec = CurveSpec.default(1, SuzukiParams(h).R_coeffs)
    ms = solve_mults(spec, determine_period(spec))
    for l, mm in ms.M_minus.items():
        assert mm == -chi(l // 8) * chi(2 * h + 1) * ms.M_plus[l]
