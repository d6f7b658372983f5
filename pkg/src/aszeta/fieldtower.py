"""Arithmetic in F_{2^m} and in its extensions F_{2^{mn}}.

Elements are plain ints holding a packed coefficient vector: for a field
built over a subfield of width ``w`` bits, coefficient ``s`` occupies bits
``[s*w, (s+1)*w)``.  The base field F_{2^m} = F_2[t]/(mod) uses ``w = 1``;
an extension F_{2^m}[u]/(p(u)) uses ``w = m``, so base-field constants embed
as the constant coefficient and bit ``s*m + r`` is the F_2-coordinate of
``t^r u^s``.

Most ring operations are written with shifts, masks and XOR only, so the
same code accepts numpy ``uint64`` arrays (as long as the packed values fit
in 64 bits).  The brute-force oracles rely on that.
"""

from __future__ import annotations

import functools
from random import Random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "FieldError",
    "FieldCtx",
    "FieldElem",
    "GF2",
    "build_base_field",
    "build_extension",
    "PackedPolys",
    "QuotientRing",
    "is_irreducible",
    "prime_factors",
]


class FieldError(ValueError):
    """Raised for invalid moduli or mixed-context operations."""


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def _rep(length: int, w: int) -> int:
    """Int with bit ``s*w`` set for every ``s < length``."""
    return ((1 << (length * w)) - 1) // ((1 << w) - 1)


@functools.lru_cache(maxsize=None)
def _spread_masks(k: int, w: int) -> tuple[int, ...]:
    # masks for moving coefficient s to slot 2s, 2**k coefficients at most
    masks = []
    for i in range(k - 1, -1, -1):
        h = 1 << i
        block = ((1 << (h * w)) - 1)
        period = 2 * h * w
        total = 2 << k
        mask = 0
        for start in range(0, total * w, period):
            mask |= block << start
        masks.append(mask)
    return tuple(masks)


def _spread(x, length: int, w: int):
    """Move the ``w``-bit coefficient at slot ``s`` to slot ``2s``."""
    if length <= 1:
        return x
    k = (length - 1).bit_length()
    for i, mask in zip(range(k - 1, -1, -1), _spread_masks(k, w)):
        x = (x | (x << ((1 << i) * w))) & mask
    return x


class _LinearCoefMap:
    """An F_2-linear map applied independently to every packed coefficient.

    ``images[r]`` is the image of the basis bit ``r``.  Application groups the
    work by bit displacement, so the cost is at most ``2w - 1`` mask/shift
    pairs whatever the vector length.
    """

    __slots__ = ("w", "plan")

    def __init__(self, images: Sequence[int], w: int):
        self.w = w
        by_shift: dict[int, int] = {}
        for r, img in enumerate(images):
            for r2 in range(w):
                if (img >> r2) & 1:
                    by_shift[r2 - r] = by_shift.get(r2 - r, 0) | (1 << r)
        self.plan = tuple(sorted(by_shift.items()))

    def __call__(self, x, length: int):
        rep = _rep(length, self.w)
        out = 0
        for shift, bits in self.plan:
            part = x & (rep * bits)
            out = out ^ (part << shift if shift >= 0 else part >> -shift)
        return out


class _GF2:
    """The prime field viewed as a coefficient field of width one."""

    width = 1
    order = 2
    degree = 1

    def mul(self, a: int, b: int) -> int:
        return a & b

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in F_2")
        return 1

    def smul(self, c: int, x, length: int):
        return x if c else x & 0

    def coef_square(self, x, length: int):
        return x

    def abs_trace(self, x: int) -> int:
        return x & 1

    def key(self):
        return ("F2",)

    def __repr__(self):
        return "GF2"


GF2 = _GF2()


class PackedPolys:
    """Dense polynomials over a coefficient field, packed into ints."""

    def __init__(self, sub):
        self.sub = sub
        self.w = sub.width

    def deg(self, a: int) -> int:
        return -1 if a == 0 else (a.bit_length() - 1) // self.w

    def coeff(self, a: int, s: int) -> int:
        return (a >> (s * self.w)) & ((1 << self.w) - 1)

    def lead(self, a: int) -> int:
        return a >> (self.deg(a) * self.w)

    def from_list(self, coeffs: Sequence[int]) -> int:
        out = 0
        for s, c in enumerate(coeffs):
            out |= c << (s * self.w)
        return out

    def to_list(self, a: int) -> list[int]:
        return [self.coeff(a, s) for s in range(self.deg(a) + 1)]

    def smul(self, c: int, a: int) -> int:
        return self.sub.smul(c, a, self.deg(a) + 1)

    def monic(self, a: int) -> int:
        if a == 0:
            return 0
        return self.smul(self.sub.inv(self.lead(a)), a)

    def mod(self, a: int, b: int) -> int:
        db = self.deg(b)
        if db < 0:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lb = self.sub.inv(self.lead(b))
        b_len = db + 1
        while a and self.deg(a) >= db:
            da = self.deg(a)
            c = self.sub.mul(a >> (da * self.w), inv_lb)
            a ^= self.sub.smul(c, b, b_len) << ((da - db) * self.w)
        return a

    def gcd(self, a: int, b: int) -> int:
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def mul(self, a: int, b: int) -> int:
        out = 0
        la = self.deg(a) + 1
        for s in range(self.deg(b) + 1):
            c = self.coeff(b, s)
            if c:
                out ^= self.sub.smul(c, a, la) << (s * self.w)
        return out

    def derivative(self, a: int) -> int:
        # characteristic 2: only odd-degree terms survive, shifted down by one
        out = 0
        for s in range(1, self.deg(a) + 1, 2):
            out |= self.coeff(a, s) << ((s - 1) * self.w)
        return out


class QuotientRing:
    """The ring sub[u]/(P) for a monic P, elements packed as ints."""

    def __init__(self, sub, modulus: int):
        self.sub = sub
        self.w = w = sub.width
        self.polys = PackedPolys(sub)
        n = self.polys.deg(modulus)
        if n < 1:
            raise FieldError(f"modulus {modulus:#x} must have positive degree")
        if self.polys.lead(modulus) != 1:
            raise FieldError(f"modulus {modulus:#x} is not monic")
        self.modulus = modulus
        self.n = n
        self.nbits = n * w
        self.full = (1 << self.nbits) - 1
        low = modulus ^ (1 << self.nbits)
        self.low_terms = tuple(
            (self.polys.coeff(low, j), j) for j in range(n) if self.polys.coeff(low, j)
        )
        self._low_deg = max((j for _, j in self.low_terms), default=0)

    # -- reduction ---------------------------------------------------------
    def _fold(self, top, top_len: int):
        out = 0
        for c, j in self.low_terms:
            out = out ^ (self.sub.smul(c, top, top_len) << (j * self.w))
        return out

    def reduce(self, x, length: int):
        """Reduce a packed polynomial with at most ``length`` coefficients."""
        n = self.n
        while length > n:
            top = x >> self.nbits
            if isinstance(top, np.ndarray):
                if not top.any():
                    return x & self.full
            elif not top:
                return x
            top_len = length - n
            x = (x & self.full) ^ self._fold(top, top_len)
            length = max(n, top_len + self._low_deg)
        return x

    def mul_u(self, x):
        return self.reduce(x << self.w, self.n + 1)

    def square(self, x):
        return self.reduce(_spread(self.sub.coef_square(x, self.n), self.n, self.w), 2 * self.n - 1)

    def mul(self, x, y):
        """Product by Horner's rule on the coefficients of ``y``."""
        w, n = self.w, self.n
        if w == 1:
            xs = (x,)
        else:
            xs = tuple(self.sub.smul(1 << r, x, n) for r in range(w))
        cmask = (1 << w) - 1
        acc = x & 0
        vector = isinstance(y, np.ndarray) or isinstance(x, np.ndarray)
        for s in range(n - 1, -1, -1):
            acc = self.mul_u(acc)
            c = (y >> (s * w)) & cmask
            for r in range(w):
                if vector:
                    acc = acc ^ (((c >> r) & 1) * xs[r])
                elif (c >> r) & 1:
                    acc ^= xs[r]
        return acc

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            e >>= 1
            if e:
                x = self.square(x)
        return result

    def frob_power(self, x, k: int):
        """x^(2^k) by k squarings."""
        for _ in range(k):
            x = self.square(x)
        return x


def is_irreducible(sub, modulus: int) -> bool:
    """Rabin's test for a monic packed polynomial over ``sub``.

    P of degree n is irreducible over F_q iff u^(q^n) = u mod P and
    gcd(u^(q^(n/r)) - u, P) = 1 for every prime r dividing n.  Factors of
    degree at most three are screened first, which rejects most candidates
    after a handful of squarings.
    """
    polys = PackedPolys(sub)
    n = polys.deg(modulus)
    if n < 1:
        return False
    if n == 1:
        return True
    if polys.coeff(modulus, 0) == 0:
        return False
    ring = QuotientRing(sub, modulus)
    w = sub.width
    u = 1 << w
    wanted = {n // r for r in prime_factors(n)} | {j for j in (1, 2, 3) if 2 * j <= n}
    x = u
    for j in range(1, n + 1):
        x = ring.frob_power(x, w)
        if j in wanted and polys.gcd(modulus, x ^ u) != 1:
            return False
    return x == u


class FieldCtx:
    """A finite field of characteristic two, F_{2^m} or F_{2^{mn}}.

    Base contexts are F_2[t]/(mod); extension contexts are F_{2^m}[u]/(p(u))
    with p monic irreducible over the base.  Contexts are immutable; build
    them with :func:`build_base_field` and :func:`build_extension`.
    """

    def __init__(self, sub, modulus: int, *, level: str, m: int, n: int, base: "FieldCtx | None"):
        self.level = level
        self.m = m
        self.n = n
        self.base = base
        self.sub = sub
        self.ring = QuotientRing(sub, modulus)
        self.modulus = modulus
        self.width = self.degree = m * n
        self.order = 1 << self.degree
        self._key = (level, m, n, modulus, base.key() if base is not None else None)
        self._rel_traces = self._power_sums(self.ring.n)
        self.trace_mask = self._trace_mask()
        self._plans: dict[int, _LinearCoefMap] = {}
        self._frob_plan = None
        self._log = self._exp = None
        if level == "base" and 1 < m <= 16:
            self._build_log_tables()

    # -- identity ----------------------------------------------------------
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.level == "base":
            return f"FieldCtx(F_2^{self.m}, modulus={self.modulus:#x})"
        return f"FieldCtx(F_2^{self.m * self.n} over F_2^{self.m}, n={self.n})"

    @property
    def modulus_coeffs(self) -> list[int]:
        return self.ring.polys.to_list(self.modulus)

    # -- traces ------------------------------------------------------------
    def _power_sums(self, count: int) -> list[int]:
        """Power sums p_s = Tr_rel(u^s), s < count, by Newton's identities."""
        sub = self.sub
        n = self.ring.n
        coeffs = self.ring.polys.to_list(self.modulus)
        elem = [coeffs[n - k] for k in range(n + 1)]  # e_k up to sign
        p = [n & 1]
        for s in range(1, count):
            acc = 0
            for k in range(1, min(s - 1, n) + 1):
                acc ^= sub.mul(elem[k], p[s - k])
            if s <= n and s & 1:
                acc ^= elem[s]
            p.append(acc)
        return p

    def _trace_mask(self) -> int:
        sub, w = self.sub, self.ring.w
        mask = 0
        for s, ps in enumerate(self._rel_traces):
            for r in range(w):
                if sub.abs_trace(sub.mul(1 << r, ps)):
                    mask |= 1 << (s * w + r)
        return mask

    def abs_trace(self, x):
        """Tr down to F_2; works on ints and on numpy uint64 arrays."""
        if isinstance(x, np.ndarray):
            return (np.bitwise_count(x & np.uint64(self.trace_mask)) & 1).astype(np.uint8)
        return (x & self.trace_mask).bit_count() & 1

    def rel_trace(self, x: int) -> int:
        """Tr from this field down to the subfield it was built over."""
        acc = 0
        for s, ps in enumerate(self._rel_traces):
            c = self.ring.polys.coeff(x, s)
            if c:
                acc ^= self.sub.mul(c, ps)
        return acc

    # -- arithmetic on raw ints ----------------------------------------------
    def _build_log_tables(self):
        size = self.order - 1
        factors = prime_factors(size)
        for g in range(2, self.order):
            if all(self.ring.pow(g, size // p) != 1 for p in factors):
                break
        exp = [0] * (2 * size)
        log = [0] * self.order
        x = 1
        for i in range(size):
            exp[i] = exp[i + size] = x
            log[x] = i
            x = self.ring.mul(x, g)
        self._exp, self._log = exp, log

    def mul(self, a, b):
        if self._log is not None and not isinstance(a, np.ndarray) and not isinstance(b, np.ndarray):
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self.ring.mul(a, b)

    def square(self, a):
        if self._log is not None and not isinstance(a, np.ndarray):
            return self.mul(a, a)
        return self.ring.square(a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self._log is not None:
            if a == 0:
                return 0 if e else 1
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self.ring.pow(a, e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.ring.pow(a, self.order - 2)

    def scale(self, b: int, x):
        """Multiply by the embedded base-field constant ``b``."""
        if self.level == "base":
            return self.mul(b, x)
        return self.sub.smul(b, x, self.ring.n)

    def frobenius_base(self, a):
        """a^(2^m): the generator of Gal(F_{2^{mn}} / F_{2^m})."""
        if self.level == "base":
            return a
        return self.ring.frob_power(a, self.m)

    def frob_power(self, a, k: int):
        return self.ring.frob_power(a, k)

    # -- services as a coefficient field (used by extensions, polynomials) ---
    def smul(self, c: int, x, length: int):
        """Multiply every coefficient of a packed vector by the constant c."""
        if c == 0:
            return x & 0
        if c == 1:
            return x
        plan = self._plans.get(c)
        if plan is None:
            plan = _LinearCoefMap([self.mul(c, 1 << r) for r in range(self.width)], self.width)
            self._plans[c] = plan
        return plan(x, length)

    def coef_square(self, x, length: int):
        if self.width == 1:
            return x
        if self._frob_plan is None:
            self._frob_plan = _LinearCoefMap([self.square(1 << r) for r in range(self.width)], self.width)
        return self._frob_plan(x, length)

    # -- elements ----------------------------------------------------------
    def __call__(self, value: int) -> "FieldElem":
        if not 0 <= value < self.order:
            raise FieldError(f"{value:#x} is not an element of {self}")
        return FieldElem(self, value)

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def gen(self) -> "FieldElem":
        """The class of the adjoined variable (t or u)."""
        return FieldElem(self, self.ring.reduce(1 << self.ring.w, 2))

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElem":
        if len(coeffs) > self.ring.n:
            raise FieldError("too many coefficients")
        return FieldElem(self, self.ring.polys.from_list(coeffs))

    def embed(self, b: int) -> int:
        """Constant embedding of a base-field value (raw int)."""
        if self.level == "base":
            return b
        if not 0 <= b < self.base.order:
            raise FieldError(f"{b:#x} is not in the base field")
        return b

    def random(self, rng: Random) -> "FieldElem":
        return FieldElem(self, rng.getrandbits(self.degree))

    def elements(self):
        for v in range(self.order):
            yield FieldElem(self, v)

    def basis(self) -> list[int]:
        """The F_2-basis t^r u^s as raw ints: bit j is basis element j."""
        return [1 << j for j in range(self.degree)]


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    def _check(self, other) -> int:
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.ctx != self.ctx:
            raise FieldError(f"mixed contexts: {self.ctx} and {other.ctx}")
        return other.value

    def __add__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return FieldElem(self.ctx, self.value ^ v)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return FieldElem(self.ctx, self.ctx.mul(self.value, v))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def __truediv__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return FieldElem(self.ctx, self.ctx.mul(self.value, self.ctx.inv(v)))

    def __bool__(self):
        return self.value != 0

    def square(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.square(self.value))

    def frobenius_base(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.frobenius_base(self.value))

    def trace(self) -> int:
        return self.ctx.abs_trace(self.value)

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    @property
    def coeffs(self) -> tuple[int, ...]:
        polys = self.ctx.ring.polys
        return tuple(polys.coeff(self.value, s) for s in range(self.ctx.ring.n))

    def __repr__(self):
        return f"FieldElem({self.value:#x})"


def _smallest_irreducible(sub, n: int) -> int:
    polys = PackedPolys(sub)
    w = sub.width
    top = 1 << (n * w)
    if n == 1:
        return top
    for low in range(1, top):
        if polys.coeff(low, 0) == 0:
            continue
        cand = top | low
        if is_irreducible(sub, cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {n}")  # unreachable


@functools.lru_cache(maxsize=None)
def build_base_field(m: int, modulus: int | None = None) -> FieldCtx:
    """Context for F_{2^m} = F_2[t]/(modulus).

    ``modulus`` is a bit-packed polynomial (bit i = coefficient of t^i).  When
    omitted, the smallest irreducible in ascending integer order is used,
    except for m = 1 where the convention is t + 1.
    """
    if m < 1:
        raise FieldError(f"field degree must be positive, got {m}")
    if modulus is None:
        modulus = 0b11 if m == 1 else _smallest_irreducible(GF2, m)
    if modulus.bit_length() - 1 != m:
        raise FieldError(f"modulus {modulus:#x} does not have degree {m}")
    if not is_irreducible(GF2, modulus):
        raise FieldError(f"modulus {modulus:#x} is reducible over F_2")
    return FieldCtx(GF2, modulus, level="base", m=m, n=1, base=None)


@functools.lru_cache(maxsize=None)
def build_extension(base: FieldCtx, n: int) -> FieldCtx:
    """Context for F_{2^{mn}} as a degree-n extension of ``base``."""
    if base.level != "base":
        raise FieldError("extensions are built over a base-level context")
    if n < 1:
        raise FieldError(f"extension degree must be positive, got {n}")
    modulus = _smallest_irreducible(base, n)
    return FieldCtx(base, modulus, level="extension", m=base.m, n=n, base=base)
