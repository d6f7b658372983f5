"""The trace quadratic forms q_n(x) = Tr(x R(x)) on F_{2^{mn}} over F_2.

Bit matrices are row-packed Python ints (bit j of row i is entry (i, j)),
so row operations are single XORs regardless of dimension.  Bulk products
go through numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fieldtower import FieldCtx, build_extension
from .linearized import AdditivePoly
from .zsqrt2 import ZSqrt2

__all__ = [
    "QuadraticSpace",
    "QuadClassification",
    "BruteForceRefused",
    "field_for",
    "build_space",
    "build_space_direct",
    "classify",
    "change_basis",
    "exp_sum",
    "brute_sum",
    "form_value",
    "gf2_rank",
    "DEFAULT_BRUTE_BOUND",
]

DEFAULT_BRUTE_BOUND = 24
_CHUNK = 1 << 18


class BruteForceRefused(RuntimeError):
    """Raised when an exhaustive sum would exceed the configured bound."""


@dataclass(frozen=True)
class QuadraticSpace:
    """q on F_2^k given by its polarisation (gram) and its diagonal.

    ``gram[i]`` is row i packed as an int; bit i of ``diag`` is q(e_i).
    ``basis[i]`` is e_i as a raw element of ``ctx``.
    """

    k: int
    gram: tuple[int, ...]
    diag: int
    basis: tuple[int, ...]
    ctx: FieldCtx | None = None

    @property
    def dim(self) -> int:
        return self.k

    def value(self, v: int) -> int:
        """q(sum v_i e_i) from the diagonal and the upper triangle of gram."""
        acc = (v & self.diag).bit_count()
        rest = v
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            acc += (self.gram[i] & rest).bit_count()
        return acc & 1

    def check_alternate(self) -> None:
        for i, row in enumerate(self.gram):
            if (row >> i) & 1:
                raise AssertionError(f"gram has a nonzero diagonal entry at {i}")
            for j in range(i):
                if ((row >> j) ^ (self.gram[j] >> i)) & 1:
                    raise AssertionError(f"gram is not symmetric at ({i}, {j})")


@dataclass(frozen=True)
class QuadClassification:
    c: int
    epsilon: int


def field_for(base: FieldCtx, n: int) -> FieldCtx:
    return base if n == 1 else build_extension(base, n)


def form_value(R: AdditivePoly, ext: FieldCtx, x):
    """q(x) = Tr(x R(x)) on raw elements (int or uint64 array)."""
    return ext.abs_trace(ext.mul(x, R.eval(ext, x)))


# -- bit-matrix helpers --------------------------------------------------------

def _rows_to_bits(rows, k: int) -> np.ndarray:
    nbytes = (k + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes),
                         axis=1, bitorder="little")
    return bits[:, :k]


def _bits_to_rows(bits: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(bits.astype(np.uint8), axis=1, bitorder="little")
    return tuple(int.from_bytes(r.tobytes(), "little") for r in packed)


def _matmul_gf2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # float64 holds the integer dot products exactly for any feasible k
    return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) & 1


def gf2_rank(rows, k: int | None = None) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


# -- construction --------------------------------------------------------------

def _trace_form_rows(ctx: FieldCtx) -> list[int]:
    """Row i is the mask of the functional y -> Tr(e_i y) on the t^r u^s basis.

    Rows for e = t^r come from the trace mask directly; multiplying e by u
    composes the functional with multiplication by u, i.e. applies the
    transpose of that map to the mask.
    """
    ring = ctx.ring
    w, nn, k = ring.w, ring.n, ctx.degree
    sub = ctx.sub
    tmask = ctx.trace_mask
    first = []
    for r in range(w):
        mask = 0
        for s in range(nn):
            for r2 in range(w):
                prod = sub.mul(1 << r, 1 << r2) if w > 1 else 1
                if ((prod << (s * w)) & tmask).bit_count() & 1:
                    mask |= 1 << (s * w + r2)
        first.append(mask)
    top_images = [ring.mul_u(1 << ((nn - 1) * w + r)) for r in range(w)]
    low = (1 << ((nn - 1) * w)) - 1

    def mul_u_transpose(mask: int) -> int:
        out = (mask >> w) & low
        for r, img in enumerate(top_images):
            if (mask & img).bit_count() & 1:
                out |= 1 << ((nn - 1) * w + r)
        return out

    rows = [0] * k
    cur = first
    for s in range(nn):
        for r in range(w):
            rows[s * w + r] = cur[r]
        if s + 1 < nn:
            cur = [mul_u_transpose(x) for x in cur]
    return rows


def build_space(R: AdditivePoly, n: int) -> QuadraticSpace:
    """The space (F_{2^{mn}}, q_n) on the standard F_2-basis.

    With X[i][j] = Tr(e_i R(e_j)), the polarisation is X + X^T and the
    diagonal of q is the diagonal of X.  X is the trace-form matrix times
    the matrix of R, one numpy product instead of k^2 form evaluations.
    """
    ext = field_for(R.ctx, n)
    k = ext.degree
    T = _rows_to_bits(_trace_form_rows(ext), k)
    cols = [R.eval(ext, 1 << j) for j in range(k)]
    MR = _rows_to_bits(cols, k).T  # column j = R(e_j)
    X = _matmul_gf2(T, MR).astype(np.uint8)
    gram = _bits_to_rows(X ^ X.T)
    diag = int.from_bytes(np.packbits(np.diagonal(X).copy(), bitorder="little").tobytes(), "little")
    return QuadraticSpace(k, gram, diag, tuple(1 << j for j in range(k)), ext)


def build_space_direct(R: AdditivePoly, n: int) -> QuadraticSpace:
    """Reference construction by polarisation, k^2 form evaluations."""
    ext = field_for(R.ctx, n)
    k = ext.degree
    q = [form_value(R, ext, 1 << i) for i in range(k)]
    gram = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if form_value(R, ext, (1 << i) | (1 << j)) ^ q[i] ^ q[j]:
                gram[i] |= 1 << j
                gram[j] |= 1 << i
    diag = sum(b << i for i, b in enumerate(q))
    return QuadraticSpace(k, tuple(gram), diag, tuple(1 << j for j in range(k)), ext)


def change_basis(space: QuadraticSpace, P: list[int]) -> QuadraticSpace:
    """Express q in the basis f_i = sum_j P[i]_j e_j (P invertible, rows packed)."""
    k = space.k
    Pb = _rows_to_bits(P, k)
    G = _rows_to_bits(space.gram, k)
    G2 = _matmul_gf2(_matmul_gf2(Pb, G), Pb.T)
    diag = sum(space.value(p) << i for i, p in enumerate(P))
    basis = []
    for p in P:
        acc = 0
        for j in range(k):
            if (p >> j) & 1:
                acc ^= space.basis[j]
        basis.append(acc)
    return QuadraticSpace(k, _bits_to_rows(G2), diag, tuple(basis), space.ctx)


# -- classification ------------------------------------------------------------

def classify(space: QuadraticSpace) -> QuadClassification:
    """Radical dimension c and invariant epsilon by symplectic reduction.

    Each step takes the lowest-index vector a with a nonzero gram row and
    its lowest partner b (b(a, b) = 1), then projects every other vector v
    to v + b(v, b) a + b(v, a) b, which is orthogonal to both.  q-values of
    projected vectors follow from q(x + y) = q(x) + q(y) + b(x, y).  The
    vectors left with zero rows span the radical.
    """
    space.check_alternate()
    k = space.k
    rows = list(space.gram)          # rows[i][j] = b(v_i, v_j) in current basis
    qv = [(space.diag >> i) & 1 for i in range(k)]
    coords = [1 << i for i in range(k)]  # current vectors in original coordinates
    alive = set(range(k))
    arf = 0
    for i in range(k):
        if i not in alive or rows[i] == 0:
            continue
        j = (rows[i] & -rows[i]).bit_length() - 1
        row_i, row_j = rows[i], rows[j]
        qi, qj = qv[i], qv[j]
        arf ^= qi & qj
        ci, cj = coords[i], coords[j]
        alive.discard(i)
        alive.discard(j)
        for t in list(alive):
            alpha = (rows[t] >> j) & 1  # b(v_t, b)
            beta = (rows[t] >> i) & 1   # b(v_t, a)
            if not (alpha or beta):
                continue
            # v_t += alpha*a + beta*b
            if alpha:
                rows[t] ^= row_i
                coords[t] ^= ci
            if beta:
                rows[t] ^= row_j
                coords[t] ^= cj
            qv[t] ^= (alpha & qi) ^ (beta & qj) ^ (alpha & beta)
        # the pair is split off: clear its columns everywhere
        clear = ~((1 << i) | (1 << j))
        for t in alive:
            rows[t] &= clear
    radical = sorted(alive)
    for t in radical:
        if rows[t]:
            raise AssertionError("symplectic reduction left a non-radical vector")
    c = len(radical)
    _assert_radical_linear(space, [coords[t] for t in radical], [qv[t] for t in radical])
    if any(qv[t] for t in radical):
        return QuadClassification(c, 0)
    return QuadClassification(c, -1 if arf else 1)


def _assert_radical_linear(space: QuadraticSpace, vecs: list[int], qs: list[int]) -> None:
    """q restricted to the radical must be additive; check the tracked values."""
    for v, qval in zip(vecs, qs):
        if space.value(v) != qval:
            raise AssertionError("tracked q-value disagrees with the form")
    for a in range(len(vecs)):
        for b in range(a + 1, min(len(vecs), a + 3)):
            if space.value(vecs[a] ^ vecs[b]) != qs[a] ^ qs[b]:
                raise AssertionError("q is not linear on the radical")


# -- exponential sums ------------------------------------------------------------

def exp_sum(R: AdditivePoly, n: int, cls: QuadClassification | None = None) -> ZSqrt2:
    """S_n = epsilon 2^((mn + c)/2), exactly."""
    if cls is None:
        cls = classify(build_space(R, n))
    e = R.ctx.m * n + cls.c
    if e % 2:
        raise AssertionError(f"mn + c_n = {e} is odd")
    return ZSqrt2(cls.epsilon << (e // 2), 0)


def brute_sum(R: AdditivePoly, n: int, bound: int = DEFAULT_BRUTE_BOUND) -> int:
    """sum over x in F_{2^{mn}} of (-1)^q(x), by exhaustive evaluation."""
    ext = field_for(R.ctx, n)
    if ext.degree > bound:
        raise BruteForceRefused(
            f"exhaustive sum over 2^{ext.degree} elements exceeds the bound 2^{bound}")
    if ext.degree > 63:
        raise BruteForceRefused("vectorized evaluation needs mn <= 63")
    total = 0
    for start in range(0, ext.order, _CHUNK):
        xs = np.arange(start, min(ext.order, start + _CHUNK), dtype=np.uint64)
        ones = int(form_value(R, ext, xs).sum())
        total += len(xs) - 2 * ones
    return total
