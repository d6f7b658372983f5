"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line, which the terminal summary repeats.
"""

import functools
import json
import time
from fractions import Fraction
from math import prod

from aszeta import arithfns, lfun
from aszeta.arithfns import (
    bareiss_det,
    block,
    divisors,
    expected_A_block,
    expected_B_block,
    matrix_A,
    matrix_B,
    ramanujan,
    sigma_sum,
    totient,
    v2,
)
from aszeta.cli import main
from aszeta.lfun import (
    DEFAULT_DIM_CEILING,
    CurveSpec,
    assemble,
    classification,
    count_points_exhaustive,
    determine_period,
    predict_epsilon,
    solve_mults,
)
from aszeta.quadform import brute_sum, exp_sum
from aszeta.suzuki import SuzukiParams, suzuki_curve_count, suzuki_curve_count_exhaustive, suzuki_epsilon
from aszeta.zsqrt2 import CyclotomicRing, PolyZSqrt2, cyclo_rev, cyclo_split

from conftest import ACCEPTANCE_LINES


def criterion(label):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                line = f"FAIL  {label}  ({time.perf_counter() - start:.2f}s)"
                ACCEPTANCE_LINES.append(line)
                print(line)
                raise
            line = f"PASS  {label}  ({time.perf_counter() - start:.2f}s)"
            ACCEPTANCE_LINES.append(line)
            print(line)
        return run
    return wrap


def _clear_caches():
    for fn in (lfun._classification, lfun._profile, arithfns.matrix_A):
        fn.cache_clear()


@criterion("1 Suzuki h=1 end-to-end")
def test_c1_suzuki_end_to_end():
    _clear_caches()
    start = time.perf_counter()
    spec = CurveSpec.default(1, (0, 1, 1))
    r = assemble(spec, counts_upto=4)
    counts = [r.point_counts[n] for n in range(1, 5)]
    enumerated = [count_points_exhaustive(spec, n) for n in range(1, 5)]
    elapsed = time.perf_counter() - start
    assert (r.period.N, r.period.D, r.period.case_tag) == (6, 24, "iiib")
    assert r.mults.plain == {} and r.mults.split == {24: (0, 1)}
    assert r.L == [1, 2, 2, 4, 4]
    assert counts == enumerated == [5, 5, 17, 9]
    assert elapsed < 1.0, f"{elapsed:.2f}s"


@criterion("2 Suzuki closed forms")
def test_c2_suzuki_closed_forms():
    start = time.perf_counter()
    for h in (1, 2):
        rep = determine_period(CurveSpec.default(1, SuzukiParams(h).R_coeffs))
        for n in range(1, 101):
            assert predict_epsilon(rep, n) == suzuki_epsilon(h, n), (h, n)
    for n in range(1, 5):
        assert suzuki_curve_count(1, n) == suzuki_curve_count_exhaustive(1, n)
    assert time.perf_counter() - start < 10


@criterion("3 oracle equivalence corpus")
def test_c3_oracle_corpus(corpus):
    start = time.perf_counter()
    assert len(corpus) >= 50
    assert {s.m for s in corpus} == {1, 2} and {s.d for s in corpus} == {1, 2, 3}
    for spec in corpus:
        R = spec.additive()
        r = assemble(spec, counts_upto=16 // spec.m)
        for n in range(1, 16 // spec.m + 1):
            assert exp_sum(R, n) == brute_sum(R, n), (spec, n)
            assert r.point_counts[n] == count_points_exhaustive(spec, n), (spec, n)
    assert time.perf_counter() - start < 300


@criterion("4 structural invariants")
def test_c4_structural_invariants(corpus):
    for spec in corpus:
        r = assemble(spec, counts_upto=1)
        rep, ms = r.period, r.mults
        assert all(isinstance(c, int) for c in r.L)
        assert len(r.L) - 1 == 1 << spec.d and r.L[0] == 1
        exps = list(ms.plain.values()) + [k for pair in ms.split.values() for k in pair]
        assert all(isinstance(k, int) and k >= 0 for k in exps)
        degree = (sum(k * totient(l) for l, k in ms.plain.items())
                  + sum((p + q) * totient(l) // 2 for l, (p, q) in ms.split.items()))
        assert degree == 1 << spec.d
        assert rep.D in (rep.N, 2 * rep.N, 4 * rep.N)
        for l in ms.ells():
            assert rep.D % l == 0
            if rep.case_tag == "ii":
                assert v2(l) == rep.a + 1
            if rep.case_tag == "iiib":
                assert v2(l) == rep.a + 2


@criterion("5 arithmetic-function identities")
def test_c5_arithmetic_identities():
    start = time.perf_counter()
    for n in range(1, 61):
        assert bareiss_det(matrix_A(n).as_lists()) == prod(divisors(n))
    for l in range(1, 121):
        ring = CyclotomicRing(l)
        for n in range(1, 121):
            assert ring.to_zsqrt2(ring.unit_sum(n)) == ramanujan(l, n)
            if l % 8 == 0:
                assert ring.to_zsqrt2(ring.unit_sum(n, twist=True)) == sigma_sum(l, n)
    for n in range(1, 49):
        A = matrix_A(n)
        B = matrix_B(n) if n % 8 == 0 else None
        for i in range(v2(n) + 1):
            for j in range(v2(n) + 1):
                assert block(A, i, j) == expected_A_block(n, i, j)
                if B is not None:
                    assert block(B, i, j) == expected_B_block(n, i, j)
    for l in range(8, 121, 8):
        plus, minus = cyclo_split(l)
        assert plus * minus == PolyZSqrt2(cyclo_rev(l))
        assert plus.conj() == minus and minus.conj() == plus
    assert time.perf_counter() - start < 30


@criterion("6 invariant-propagation laws")
def test_c6_propagation_laws(corpus):
    for spec in corpus:
        rep = determine_period(spec)
        for n in range(1, min(3 * rep.D, DEFAULT_DIM_CEILING // spec.m) + 1):
            cls = classification(spec, n)
            assert predict_epsilon(rep, n) == cls.epsilon, (spec, n)
            assert rep.c_of(n) == cls.c


@criterion("7 sign-resolution record")
def test_c7_sign_resolution(tmp_path, capsys):
    path = tmp_path / "suzuki1.txt"
    path.write_text("m=1\nR=0,1,1\n")
    code = main(["verify", str(path)])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["summary"]["pass"]
    sc = doc["sign_convention"]
    assert sc["brute_S1"] == "2"
    assert sc["adopted"] == "minus" and sc["conventions"]["minus"]["rhs"] == "-S_n*"
    assert sc["conventions"]["minus"]["matches_brute"] and sc["conventions"]["minus"]["S1"] == "2"
    assert not sc["conventions"]["plus"]["matches_brute"]
    spec = CurveSpec.default(1, (0, 1, 1))
    ms = solve_mults(spec, determine_period(spec))
    assert ms.sign_convention == "minus" and ms.M_minus[24] == Fraction(-1, 2)
