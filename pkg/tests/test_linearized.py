import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aszeta.fieldtower import FieldError, build_base_field, build_extension
from aszeta.linearized import (
    AdditivePoly,
    FrobeniusPowers,
    frobenius_power_mod,
    kernel_poly,
    radical_dim,
    radical_profile,
    splitting_degree,
)

F2 = build_base_field(1)
F4 = build_base_field(2)


def suzuki_R(h):
    return AdditivePoly(F2, (0,) * h + (1, 1))


def random_R(rng, F, d):
    q = F.order
    return AdditivePoly(F, tuple([rng.randrange(q) for _ in range(d)] + [rng.randrange(1, q)]))


def test_zero_polynomial_rejected():
    with pytest.raises(FieldError):
        AdditivePoly(F2, (0, 0))


def test_kernel_poly_suzuki():
    Rt = kernel_poly(suzuki_R(1))
    assert Rt.coeffs == (1, 1, 0, 1, 1)  # x^16 + x^8 + x^2 + x


def test_kernel_poly_of_x_squared():
    assert kernel_poly(AdditivePoly(F2, (0, 1))).coeffs == (1, 0, 1)  # x^4 + x


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.integers(1, 3))
def test_kernel_poly_linear_coefficient_is_leading_coefficient(low, top):
    R = AdditivePoly(F4, tuple(low) + (top,))
    Rt = kernel_poly(R)
    assert Rt.coeffs[0] == top
    assert Rt.d == 2 * R.d


def test_frobenius_power_examples():
    assert frobenius_power_mod(F2, [0, 1, 1], 1) == [0, 1]  # x^2 mod x^2+x
    assert frobenius_power_mod(F2, [1, 1, 0, 1], 3) == [0, 1]
    Rt = kernel_poly(suzuki_R(1)).to_ordinary()
    assert frobenius_power_mod(F2, Rt, 6) == [0, 1]


def test_splitting_degrees():
    assert splitting_degree(kernel_poly(suzuki_R(1))) == 6
    assert splitting_degree(kernel_poly(AdditivePoly(F2, (0, 1)))) == 2
    assert splitting_degree(kernel_poly(AdditivePoly(F4, (0, 1)))) == 1


def test_radical_dims_suzuki():
    Rt = kernel_poly(suzuki_R(1))
    assert radical_dim(Rt, 1) == 1
    assert radical_dim(Rt, 2) == 2
    assert radical_dim(Rt, 6) == 4


def test_radical_profile_suzuki():
    p = radical_profile(suzuki_R(1))
    assert (p.N, p.N_odd, p.a) == (6, 3, 1)
    # c_4 = c_gcd(4,6) = c_2 = 2
    assert p.c == {1: 1, 2: 2, 3: 3, 4: 2, 6: 4, 12: 4}


def test_radical_profile_x_squared_over_f4():
    p = radical_profile(AdditivePoly(F4, (0, 1)))
    assert p.N == 1 and p.c == {1: 2, 2: 2}


def test_evaluation_is_additive():
    rng = random.Random(3)
    E = build_extension(F4, 5)
    for _ in range(20):
        R = random_R(rng, F4, rng.randint(1, 3))
        x, y = rng.randrange(E.order), rng.randrange(E.order)
        assert R.eval(E, x ^ y) == R.eval(E, x) ^ R.eval(E, y)


def _root_count(Rt, E):
    xs = np.arange(E.order, dtype=np.uint64)
    return int((Rt.eval(E, xs) == 0).sum())


@pytest.mark.parametrize("seed", range(12))
def test_profile_properties_random(seed):
    rng = random.Random(seed)
    F = F2 if seed % 2 else F4
    R = random_R(rng, F, rng.randint(1, 3))
    Rt = kernel_poly(R)
    table = FrobeniusPowers(F, Rt.to_ordinary())
    p = radical_profile(R)
    assert p.c[2 * p.N] == p.c[p.N] == 2 * R.d
    for n in range(1, 5 * p.N + 1):
        c = radical_dim(table, n)
        assert c == p.c_of(n) == radical_dim(table, gcd(n, p.N))
        assert (c - F.m * n) % 2 == 0
        if F.m * n <= 12:
            E = F if n == 1 else build_extension(F, n)
            assert _root_count(Rt, E) == 2 ** c
