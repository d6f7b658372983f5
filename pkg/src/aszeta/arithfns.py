"""Arithmetic functions and divisor-indexed matrices, all exact.

Divisor-indexed objects always carry their (ascending) index lists so that
joins between vectors and matrices never depend on positional conventions.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

from .zsqrt2 import ZSqrt2

__all__ = [
    "factorize",
    "moebius",
    "totient",
    "divisors",
    "v2",
    "odd_part",
    "chi",
    "ramanujan",
    "sigma_sum",
    "DivisorMatrix",
    "matrix_A",
    "matrix_B",
    "matrix_delta",
    "block",
    "expected_A_block",
    "expected_B_block",
    "bareiss_det",
    "solve_exact",
]


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@functools.lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division as ((p, e), ...)."""
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def totient(n: int) -> int:
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(n))


@functools.lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def divisors(n: int) -> list[int]:
    _check_positive(n)
    return list(_divisors(n))


def v2(n: int) -> int:
    if n == 0:
        raise ValueError("v2(0) is undefined")
    n = abs(n)
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    return n >> v2(n)


def chi(k: int) -> int:
    """The character mod 8 with kernel {1, 7}; defined on odd k only."""
    if k % 2 == 0:
        raise ValueError(f"chi is evaluated on odd integers only, got {k}")
    return 1 if k % 8 in (1, 7) else -1


def ramanujan(ell: int, n: int) -> int:
    """c_ell(n) via the von Sterneck closed form."""
    _check_positive(ell)
    _check_positive(n)
    q = ell // gcd(ell, n)
    return moebius(q) * (totient(ell) // totient(q))


def sigma_sum(ell: int, n: int) -> ZSqrt2:
    """sum over units i mod ell of chi(i) zeta_ell^(n i), for 8 | ell."""
    _check_positive(n)
    k = v2(ell)
    if k < 3:
        raise ValueError(f"sigma_ell needs 8 | ell, got ell={ell}")
    if v2(n) != k - 3:
        return ZSqrt2()
    ell_odd, n_odd = ell >> k, n >> (k - 3)
    return ZSqrt2(0, chi(ell_odd * n_odd) * (1 << (k - 2)) * ramanujan(ell_odd, n_odd))


# -- divisor-indexed matrices --------------------------------------------------

@dataclass(frozen=True)
class DivisorMatrix:
    """A matrix with explicit row and column index lists."""

    n: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: tuple[tuple, ...]

    def __getitem__(self, key):
        d, ell = key
        return self.entries[self.rows.index(d)][self.cols.index(ell)]

    @property
    def size(self) -> int:
        return len(self.rows)

    def as_lists(self) -> list[list]:
        return [list(r) for r in self.entries]

    def scaled(self, k) -> "DivisorMatrix":
        return DivisorMatrix(self.n, self.rows, self.cols,
                             tuple(tuple(k * x for x in r) for r in self.entries))


def _build(n: int, rows, cols, fn) -> DivisorMatrix:
    return DivisorMatrix(n, tuple(rows), tuple(cols),
                         tuple(tuple(fn(d, ell) for ell in cols) for d in rows))


@functools.lru_cache(maxsize=256)
def matrix_A(n: int) -> DivisorMatrix:
    """A(n) = (c_ell(d)) with rows d | n and columns ell | n."""
    divs = divisors(n)
    A = _build(n, divs, divs, lambda d, ell: ramanujan(ell, d))
    det = bareiss_det(A.as_lists())
    if det != prod(divs):
        raise AssertionError(f"det A({n}) = {det}, expected {prod(divs)}")
    return A


def matrix_B(n: int) -> DivisorMatrix:
    """B(n) = (sigma_ell(d)); columns with v2(ell) < 3 are zero."""
    divs = divisors(n)
    return _build(n, divs, divs,
                  lambda d, ell: sigma_sum(ell, d) if ell % 8 == 0 else ZSqrt2())


def matrix_delta(n_odd: int) -> DivisorMatrix:
    if n_odd % 2 == 0:
        raise ValueError(f"Delta is indexed by an odd integer, got {n_odd}")
    divs = divisors(n_odd)
    return _build(n_odd, divs, divs, lambda d, ell: chi(d) if d == ell else 0)


def block(M: DivisorMatrix, i: int, j: int) -> list[list]:
    """Sub-block with rows of 2-adic valuation i and columns of valuation j."""
    rs = [r for r, d in enumerate(M.rows) if v2(d) == i]
    cs = [c for c, ell in enumerate(M.cols) if v2(ell) == j]
    return [[M.entries[r][c] for c in cs] for r in rs]


def expected_A_block(n: int, i: int, j: int) -> list[list[int]]:
    """Block (i, j) of A(n) predicted from A(n') alone, n' the odd part."""
    base = matrix_A(odd_part(n)).as_lists()
    if i <= j - 2:
        k = 0
    elif i == j - 1:
        k = -(1 << i)
    elif j == 0:
        k = 1
    else:
        k = 1 << (j - 1)
    return [[k * x for x in row] for row in base]


def expected_B_block(n: int, i: int, j: int) -> list[list[ZSqrt2]]:
    """Block (i, j) of B(n): only j = i + 3 is nonzero, equal to
    2^(i+1) sqrt2 Delta(n') A(n') Delta(n')."""
    n_odd = odd_part(n)
    A, D = matrix_A(n_odd), matrix_delta(n_odd)
    size = A.size
    if j != i + 3:
        return [[ZSqrt2()] * size for _ in range(size)]
    return [[ZSqrt2(0, (1 << (i + 1)) * D.entries[r][r] * A.entries[r][c] * D.entries[c][c])
             for c in range(size)] for r in range(size)]


# -- exact linear algebra ------------------------------------------------------

def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in M]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(M: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve M x = rhs over Q for square invertible M.

    Fraction-free forward elimination on the augmented integer matrix, then
    rational back substitution.
    """
    n = len(M)
    scale = 1
    for r in list(M) + [rhs]:
        for x in (r if isinstance(r, (list, tuple)) else [r]):
            scale = scale * Fraction(x).denominator // gcd(scale, Fraction(x).denominator)
    a = [[int(Fraction(x) * scale) for x in row] + [int(Fraction(b) * scale)]
         for row, b in zip(M, rhs)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                raise ArithmeticError("singular system")
            a[k], a[swap] = a[swap], a[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(a[i][n]) - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / a[i][i]
    return x
