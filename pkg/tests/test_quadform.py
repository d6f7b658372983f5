import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aszeta.fieldtower import build_base_field
from aszeta.linearized import AdditivePoly, radical_dim, kernel_poly
from aszeta.quadform import (
    BruteForceRefused,
    QuadClassification,
    QuadraticSpace,
    brute_sum,
    build_space,
    build_space_direct,
    change_basis,
    classify,
    exp_sum,
    form_value,
    gf2_rank,
)

F2 = build_base_field(1)
F4 = build_base_field(2)
SUZ = AdditivePoly(F2, (0, 1, 1))


def space(gram_rows, diag_bits):
    k = len(gram_rows)
    gram = tuple(sum(b << j for j, b in enumerate(r)) for r in gram_rows)
    diag = sum(b << i for i, b in enumerate(diag_bits))
    return QuadraticSpace(k, gram, diag, tuple(1 << i for i in range(k)))


def brute_classify(sp: QuadraticSpace) -> int:
    return sum(1 - 2 * sp.value(v) for v in range(1 << sp.k))


class TestCanonicalForms:
    def test_hyperbolic_plane(self):
        assert classify(space([[0, 1], [1, 0]], [0, 0])) == QuadClassification(0, 1)

    def test_anisotropic_plane(self):
        assert classify(space([[0, 1], [1, 0]], [1, 1])) == QuadClassification(0, -1)

    def test_nontrivial_on_radical(self):
        sp = space([[0, 1, 0], [1, 0, 0], [0, 0, 0]], [0, 0, 1])
        assert classify(sp) == QuadClassification(1, 0)

    def test_zero_form(self):
        assert classify(space([[0] * 3] * 3, [0, 0, 0])) == QuadClassification(3, 1)

    def test_non_alternate_rejected(self):
        with pytest.raises(AssertionError):
            classify(space([[0, 1], [0, 0]], [0, 0]))


def _random_space(rng, k):
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            rows[i][j] = rows[j][i] = rng.randint(0, 1)
    return space(rows, [rng.randint(0, 1) for _ in range(k)])


@given(st.integers(1, 9), st.integers(0, 2**32))
def test_classification_matches_character_sum(k, seed):
    sp = _random_space(random.Random(seed), k)
    cls = classify(sp)
    total = brute_classify(sp)
    if cls.epsilon == 0:
        assert total == 0
    else:
        assert total == cls.epsilon * 2 ** ((k + cls.c) // 2)
    assert k - cls.c == gf2_rank(sp.gram)


def _random_invertible(rng, k):
    while True:
        P = [rng.getrandbits(k) for _ in range(k)]
        if gf2_rank(P) == k:
            return P


@given(st.integers(2, 14), st.integers(0, 2**32))
def test_classification_is_basis_invariant(k, seed):
    rng = random.Random(seed)
    sp = _random_space(rng, k)
    P = _random_invertible(rng, k)
    assert classify(change_basis(sp, P)) == classify(sp)


@pytest.mark.parametrize("F,coeffs,n", [
    (F2, (0, 1, 1), 1), (F2, (0, 1, 1), 4), (F2, (1, 1, 0, 1), 5),
    (F4, (1, 2, 3), 3), (F4, (3, 1), 4), (F4, (0, 0, 0, 2), 2),
])
def test_fast_build_matches_polarisation(F, coeffs, n):
    R = AdditivePoly(F, coeffs)
    fast, direct = build_space(R, n), build_space_direct(R, n)
    assert fast.gram == direct.gram and fast.diag == direct.diag
    fast.check_alternate()
    rng = random.Random(n)
    for _ in range(30):
        v = rng.getrandbits(fast.k)
        assert fast.value(v) == form_value(R, fast.ctx, v)


def test_suzuki_n1_space_is_zero():
    sp = build_space(SUZ, 1)
    assert sp.k == 1 and sp.gram == (0,) and sp.diag == 0


def test_suzuki_n4_rank():
    sp = build_space(SUZ, 4)
    c4 = radical_dim(kernel_poly(SUZ), 4)
    assert c4 == 2
    assert gf2_rank(sp.gram) == 4 - c4 == 2


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 0), (3, 8), (4, -8)])
def test_suzuki_sums(n, expected):
    assert exp_sum(SUZ, n) == expected
    assert brute_sum(SUZ, n) == expected


def test_vanishing_form_sums_to_field_size():
    # f(x) = x^q0 (x^8 + x) vanishes on F_8
    assert brute_sum(SUZ, 3) == 8


def test_brute_bound_refusal():
    with pytest.raises(BruteForceRefused):
        brute_sum(SUZ, 30)
    with pytest.raises(BruteForceRefused):
        brute_sum(SUZ, 8, bound=7)


@pytest.mark.parametrize("seed", range(16))
def test_oracle_equivalence_and_valuation_rules(seed):
    rng = random.Random(100 + seed)
    F = F2 if seed % 2 else F4
    d = rng.randint(1, 3)
    R = AdditivePoly(F, tuple([rng.randrange(F.order) for _ in range(d)] + [rng.randrange(1, F.order)]))
    Rt = kernel_poly(R)
    from aszeta.linearized import splitting_degree

    N = splitting_degree(Rt)
    vN = (N & -N).bit_length() - 1
    for n in range(1, 20 // F.m + 1):
        cls = classify(build_space(R, n))
        assert cls.c == radical_dim(Rt, n)
        assert (F.m * n + cls.c) % 2 == 0
        s = brute_sum(R, n)
        assert exp_sum(R, n, cls) == s
        assert (s == 0) == (cls.epsilon == 0)
        if s:
            assert abs(s) == 2 ** ((F.m * n + cls.c) // 2)
        if ((n & -n).bit_length() - 1) > vN:
            assert cls.epsilon != 0


def test_brute_sum_chunks_agree():
    R = AdditivePoly(F4, (1, 2, 3))
    ext = build_space(R, 10).ctx
    xs = np.arange(ext.order, dtype=np.uint64)
    direct = ext.order - 2 * int(form_value(R, ext, xs).sum())
    assert brute_sum(R, 10) == direct
