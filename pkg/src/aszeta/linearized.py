"""2-linearized polynomials, the kernel polynomial and its root spaces.

An additive polynomial sum a_i x^(2^i) is stored by its coefficient
sequence over the base field.  Ordinary polynomials are packed ints in the
:mod:`aszeta.fieldtower` layout (coefficient s at bits [s*m, (s+1)*m)).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .fieldtower import FieldCtx, FieldError, PackedPolys, QuotientRing

__all__ = [
    "AdditivePoly",
    "RadicalProfile",
    "FrobeniusPowers",
    "kernel_poly",
    "frobenius_power_mod",
    "splitting_degree",
    "radical_dim",
    "radical_profile",
    "divisors",
]


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


@dataclass(frozen=True)
class AdditivePoly:
    """sum_{i=0}^{d} a_i x^(2^i) over a base-level field context."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            raise FieldError("additive polynomial must be nonzero")
        for a in coeffs:
            if not 0 <= a < self.ctx.order:
                raise FieldError(f"coefficient {a:#x} is not in {self.ctx}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, ext: FieldCtx, x):
        """Evaluate at a raw element (int or uint64 array) of ``ext``.

        ``ext`` must be the base context itself or an extension of it.
        """
        acc = x & 0
        power = x
        for i, a in enumerate(self.coeffs):
            if i:
                power = ext.square(power)
            if a == 1:
                acc = acc ^ power
            elif a:
                acc = acc ^ ext.scale(a, power)
        return acc

    def to_ordinary(self) -> int:
        """The packed ordinary polynomial with coefficient a_i at degree 2^i."""
        polys = PackedPolys(self.ctx)
        return polys.from_list(_spread_additive(self.coeffs))


def _spread_additive(coeffs: Sequence[int]) -> list[int]:
    out = [0] * ((1 << (len(coeffs) - 1)) + 1)
    for i, a in enumerate(coeffs):
        out[1 << i] = a
    return out


def kernel_poly(R: AdditivePoly) -> AdditivePoly:
    """The kernel polynomial sum a_i^(2^d) x^(2^(d+i)) + a_i^(2^(d-i)) x^(2^(d-i))."""
    F, d = R.ctx, R.d
    out = [0] * (2 * d + 1)
    for i, a in enumerate(R.coeffs):
        out[d + i] ^= F.pow(a, 1 << d)
        out[d - i] ^= F.pow(a, 1 << (d - i))
    return AdditivePoly(F, tuple(out))


class FrobeniusPowers:
    """Successive x^(2^(m*n)) mod P for n = 0, 1, 2, ..., cached."""

    def __init__(self, ctx: FieldCtx, P: int):
        polys = PackedPolys(ctx)
        if polys.deg(P) < 1:
            raise FieldError("modulus must be nonconstant")
        self.ctx = ctx
        self.polys = polys
        self.modulus = polys.monic(P)
        self.ring = QuotientRing(ctx, self.modulus)
        self.x = self.ring.reduce(1 << ctx.width, 2)
        self._powers = [self.x]
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> int:
        if n < len(self._powers):
            return self._powers[n]
        with self._lock:  # appends are exclusive; reads above need no lock
            while len(self._powers) <= n:
                self._powers.append(self.ring.frob_power(self._powers[-1], self.ctx.m))
        return self._powers[n]


def frobenius_power_mod(ctx: FieldCtx, P: Sequence[int] | int, n: int) -> list[int]:
    """Coefficient list of x^(2^(m*n)) mod P, where m is the degree of ``ctx``."""
    if not isinstance(P, int):
        P = PackedPolys(ctx).from_list(P)
    table = FrobeniusPowers(ctx, P)
    return table.polys.to_list(table[n])


def _as_table(ctx: FieldCtx, Rt: AdditivePoly | FrobeniusPowers) -> FrobeniusPowers:
    if isinstance(Rt, FrobeniusPowers):
        return Rt
    return FrobeniusPowers(ctx, Rt.to_ordinary())


def splitting_degree(Rt: AdditivePoly | FrobeniusPowers, limit: int | None = None) -> int:
    """Least n >= 1 with x^(2^(m*n)) = x modulo the (separable) polynomial Rt."""
    table = _as_table(getattr(Rt, "ctx", None), Rt)
    n = 1
    while table[n] != table.x:
        n += 1
        if limit is not None and n > limit:
            raise RuntimeError(f"splitting degree exceeds {limit}")
    return n


def radical_dim(Rt: AdditivePoly | FrobeniusPowers, n: int) -> int:
    """log2 deg gcd(Rt, x^(2^(m*n)) + x)."""
    if n < 1:
        raise ValueError("n must be positive")
    table = _as_table(getattr(Rt, "ctx", None), Rt)
    g = table.polys.gcd(table.modulus, table[n] ^ table.x)
    deg = table.polys.deg(g)
    if deg < 1 or deg & (deg - 1):
        raise AssertionError(f"gcd degree {deg} is not a power of two")
    return deg.bit_length() - 1


@dataclass
class RadicalProfile:
    N: int
    N_odd: int
    a: int
    c: dict[int, int] = field(default_factory=dict)

    def c_of(self, n: int) -> int:
        return self.c[gcd(n, self.N)]


def radical_profile(R: AdditivePoly) -> RadicalProfile:
    """Splitting degree of the kernel polynomial and c_n for every n | 2N."""
    Rt = kernel_poly(R)
    table = FrobeniusPowers(R.ctx, Rt.to_ordinary())
    N = splitting_degree(table)
    a = (N & -N).bit_length() - 1
    c = {n: radical_dim(table, n) for n in divisors(2 * N)}
    if c[N] != 2 * R.d:
        raise AssertionError(f"c_N = {c[N]} but the root space has dimension {2 * R.d}")
    return RadicalProfile(N=N, N_odd=N >> a, a=a, c=c)
