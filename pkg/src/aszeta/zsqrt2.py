"""Exact arithmetic in Z[sqrt 2], polynomials over it, and cyclotomic factors.

The cyclotomic factors here use the reversed convention
prod (1 - zeta T) over the primitive l-th roots, constant term first.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ZSqrt2",
    "SQRT2",
    "PolyZSqrt2",
    "cyclotomic",
    "cyclo_rev",
    "cyclo_split",
    "CyclotomicRing",
    "int_poly_mul",
]


@dataclass(frozen=True)
class ZSqrt2:
    """a + b*sqrt(2) with integer a, b."""

    a: int = 0
    b: int = 0

    @classmethod
    def coerce(cls, x) -> "ZSqrt2":
        if isinstance(x, ZSqrt2):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, Fraction) and x.denominator == 1:
            return cls(int(x), 0)
        raise TypeError(f"cannot coerce {x!r} to ZSqrt2")

    def __add__(self, other):
        try:
            o = ZSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return ZSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return ZSqrt2(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = ZSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return ZSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return ZSqrt2.coerce(other) - self

    def __mul__(self, other):
        try:
            o = ZSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return ZSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not in Z[sqrt 2] in general")
        out, base = ZSqrt2(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, ZSqrt2):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def conj(self) -> "ZSqrt2":
        return ZSqrt2(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a - 2 * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def times_sqrt2_power(self, k: int) -> "ZSqrt2":
        """Multiply by sqrt(2)^k for k >= 0."""
        half, odd = divmod(k, 2)
        out = ZSqrt2(self.a << half, self.b << half)
        if odd:
            out = ZSqrt2(2 * out.b, out.a)
        return out

    def exact_div(self, k: int) -> "ZSqrt2":
        if self.a % k or self.b % k:
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return ZSqrt2(self.a // k, self.b // k)

    def __float__(self):
        return self.a + self.b * 2 ** 0.5

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        if self.a == 0:
            return f"{self.b}*sqrt2"
        return f"({self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt2)"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}


SQRT2 = ZSqrt2(0, 1)


class PolyZSqrt2:
    """Polynomial over Z[sqrt 2], constant term first, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [ZSqrt2.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls) -> "PolyZSqrt2":
        return cls([1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> ZSqrt2:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZSqrt2()

    def __eq__(self, other):
        if isinstance(other, PolyZSqrt2):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self == PolyZSqrt2(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyZSqrt2(self[k] + other[k] for k in range(n))

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return PolyZSqrt2()
        out = [ZSqrt2()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return PolyZSqrt2(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out, base = PolyZSqrt2.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "PolyZSqrt2":
        return PolyZSqrt2(c.conj() for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.b == 0 for c in self.coeffs)

    def to_ints(self) -> list[int]:
        if not self.is_integral():
            raise ArithmeticError("polynomial has irrational coefficients")
        return [c.a for c in self.coeffs]

    def __repr__(self):
        return f"PolyZSqrt2({list(self.coeffs)})"


def _as_poly(x) -> PolyZSqrt2:
    if isinstance(x, PolyZSqrt2):
        return x
    if isinstance(x, (list, tuple)):
        return PolyZSqrt2(x)
    return PolyZSqrt2([x])


# -- integer polynomials ------------------------------------------------------

def int_poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def _int_poly_divexact(p: Sequence[int], q: Sequence[int]) -> list[int]:
    p = list(p)
    dq = len(q) - 1
    out = [0] * (len(p) - dq)
    for k in range(len(out) - 1, -1, -1):
        c = p[k + dq] // q[dq]
        out[k] = c
        for j, y in enumerate(q):
            p[k + j] -= c * y
    if any(p):
        raise ArithmeticError("inexact polynomial division")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic(ell: int) -> tuple[int, ...]:
    """Standard cyclotomic polynomial Phi_ell, constant term first."""
    if ell < 1:
        raise ValueError("ell must be positive")
    num = [-1] + [0] * (ell - 1) + [1]
    for d in range(1, ell):
        if ell % d == 0:
            num = _int_poly_divexact(num, cyclotomic(d))
    return tuple(num)


@functools.lru_cache(maxsize=None)
def cyclo_rev(ell: int) -> tuple[int, ...]:
    """prod (1 - zeta T) over primitive ell-th roots zeta."""
    if ell == 1:
        return (1, -1)
    return cyclotomic(ell)  # palindromic for ell >= 2


def _chi(k: int) -> int:
    return 1 if k % 8 in (1, 7) else -1


class CyclotomicRing:
    """Z[y]/(Phi_ell(y)) with elements as integer coefficient tuples."""

    def __init__(self, ell: int):
        self.ell = ell
        self.phi = cyclotomic(ell)
        self.dim = len(self.phi) - 1
        self._powers = self._reduce_powers()
        self._table = None

    def _reduce_powers(self) -> list[tuple[int, ...]]:
        dim = self.dim
        out = []
        cur = [1] + [0] * (dim - 1)
        for _ in range(self.ell):
            out.append(tuple(cur))
            # multiply by y and reduce with the monic Phi
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.phi)]
        return out

    def root_power(self, e: int) -> tuple[int, ...]:
        return self._powers[e % self.ell]

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, k: int, x):
        return tuple(k * a for a in x)

    def zero(self):
        return (0,) * self.dim

    def mul_root_power(self, x, e: int):
        """x * y^e, using precomputed reductions of y^e."""
        out = [0] * self.dim
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(self._powers[(i + e) % self.ell]):
                    out[j] += a * b
        return tuple(out)

    def sqrt2(self) -> tuple[int, ...]:
        if self.ell % 8:
            raise ValueError("sqrt 2 lies in Q(zeta_ell) here only when 8 | ell")
        e = self.ell // 8
        return self.add(self.root_power(e), self.root_power(7 * e))

    def to_zsqrt2(self, x) -> ZSqrt2:
        """Write x as u + v*sqrt2; raises if x is not in Z[sqrt 2]."""
        one = self.root_power(0)
        if self.ell % 8:
            if any(x[1:]):
                raise ArithmeticError("element is not rational")
            return ZSqrt2(x[0], 0)
        s = self.sqrt2()
        j = next(i for i in range(1, self.dim) if s[i])
        if x[j] % s[j]:
            raise ArithmeticError("element is not in Z[sqrt 2]")
        v = x[j] // s[j]
        u = x[0] - v * s[0]
        if tuple(u * o + v * t for o, t in zip(one, s)) != tuple(x):
            raise ArithmeticError("element is not in Z[sqrt 2]")
        return ZSqrt2(u, v)

    def unit_sum(self, n: int, twist: bool = False):
        """sum over i in (Z/ell)^x of [chi(i)] y^(n i)."""
        if self._table is None:
            self._table = np.array(self._powers, dtype=np.int64).reshape(self.ell, self.dim)
        counts = np.zeros(self.ell, dtype=np.int64)
        for i in range(1, self.ell + 1):
            if gcd(i, self.ell) == 1:
                counts[(n * i) % self.ell] += _chi(i) if twist else 1
        return tuple(int(x) for x in counts @ self._table)


def cyclo_split(ell: int) -> tuple[PolyZSqrt2, PolyZSqrt2]:
    """Phi_ell = Phi^+ Phi^- over Q(sqrt 2), for 8 | ell.

    Phi^+ collects the roots zeta^i with chi(i) = +1 and Phi^- the others;
    both are expanded exactly in Z[y]/(Phi_ell) before reading off the
    Z[sqrt 2] coefficients.
    """
    if ell % 8:
        raise ValueError(f"Phi_{ell} does not split over Q(sqrt 2): need 8 | ell")
    ring = CyclotomicRing(ell)
    halves = []
    for sign in (1, -1):
        poly = [ring.root_power(0)]  # coefficients in T, each a ring element
        for i in range(1, ell):
            if gcd(i, ell) != 1 or _chi(i) != sign:
                continue
            # multiply by (1 - y^i T)
            shifted = [ring.scale(-1, ring.mul_root_power(c, i)) for c in poly]
            poly = [
                ring.add(poly[k] if k < len(poly) else ring.zero(),
                         shifted[k - 1] if k >= 1 else ring.zero())
                for k in range(len(poly) + 1)
            ]
        halves.append(PolyZSqrt2(ring.to_zsqrt2(c) for c in poly))
    plus, minus = halves
    if (plus * minus) != PolyZSqrt2(cyclo_rev(ell)):
        raise AssertionError(f"Phi^+ Phi^- != Phi_{ell}")
    return plus, minus
