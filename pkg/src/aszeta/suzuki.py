"""Closed forms for f(x) = x^q0 (x^q + x) over F_2, q0 = 2^h, q = 2^(2h+1).

This module is an independent oracle: it relies on :mod:`aszeta.fieldtower`
for enumeration and on nothing else from the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .fieldtower import build_base_field

__all__ = [
    "SuzukiParams",
    "suzuki_epsilon",
    "suzuki_c",
    "suzuki_sum",
    "suzuki_curve_count",
    "suzuki_curve_count_exhaustive",
    "suzuki_sum_exhaustive",
]


def _chi(k: int) -> int:
    return 1 if k % 8 in (1, 7) else -1


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class SuzukiParams:
    h: int

    def __post_init__(self):
        if self.h < 1:
            raise ValueError(f"h must be at least 1, got {self.h}")

    @property
    def q0(self) -> int:
        return 1 << self.h

    @property
    def q(self) -> int:
        return 1 << (2 * self.h + 1)

    @property
    def R_coeffs(self) -> tuple[int, ...]:
        """R(x) = x^(2 q0) + x^q0 as the coefficients of x^(2^i)."""
        return (0,) * self.h + (1, 1)

    @property
    def d(self) -> int:
        return self.h + 1


def suzuki_epsilon(h: int, n: int) -> int:
    p = SuzukiParams(h)
    if n < 1:
        raise ValueError("n must be positive")
    odd = 2 * p.h + 1
    g = gcd(n, odd)
    if n % 2:
        return _chi(n * g)
    v = _v2(n)
    if v == 1:
        return 0
    e = _chi(odd * g)
    return e if v == 2 else -e


def suzuki_c(h: int, n: int) -> int:
    p = SuzukiParams(h)
    if n < 1:
        raise ValueError("n must be positive")
    return gcd(n, 2 * p.h + 1) + (0 if n % 2 else 1)


def suzuki_sum(h: int, n: int) -> int:
    """S_n(f) = eps_n 2^((n + c_n)/2)."""
    return suzuki_epsilon(h, n) << ((n + suzuki_c(h, n)) // 2)


def suzuki_curve_count(h: int, n: int) -> int:
    """Projective points of y^q + y = x^q0 (x^q + x) over F_{2^n}."""
    p = SuzukiParams(h)
    return (1 << n) + 1 + ((1 << gcd(n, 2 * p.h + 1)) - 1) * suzuki_sum(h, n)


def _field(n: int):
    F = build_base_field(n)
    return F, np.arange(F.order, dtype=np.uint64)


def _f(F, x, p: SuzukiParams):
    xq = F.frob_power(x, 2 * p.h + 1)
    return F.mul(F.frob_power(x, p.h), xq ^ x)


def suzuki_sum_exhaustive(h: int, n: int, bound: int = 22) -> int:
    if n > bound:
        raise RuntimeError(f"F_2^{n} exceeds the enumeration bound {bound}")
    p = SuzukiParams(h)
    F, xs = _field(n)
    ones = int(F.abs_trace(_f(F, xs, p)).sum())
    return F.order - 2 * ones


def suzuki_curve_count_exhaustive(h: int, n: int, bound: int = 16) -> int:
    """Count (x, y) in F_{2^n}^2 with y^q + y = f(x) literally, plus infinity."""
    if n > bound:
        raise RuntimeError(f"F_2^{n} exceeds the enumeration bound {bound}")
    p = SuzukiParams(h)
    F, xs = _field(n)
    lhs = F.frob_power(xs, 2 * p.h + 1) ^ xs
    hits = np.bincount(lhs.astype(np.int64), minlength=F.order)
    return 1 + int(hits[_f(F, xs, p).astype(np.int64)].sum())
