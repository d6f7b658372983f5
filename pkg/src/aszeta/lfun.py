"""Period, multiplicities and the L-function of y^2 + y = x R(x).

The pipeline classifies q_n for the divisors of 2N, reads off the period
and its case, solves the divisor systems for the cyclotomic multiplicities
of L*(T) = L(T / sqrt2^m), and assembles L, the zeta denominator and point
counts for arbitrary n from the factorization.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .arithfns import chi, divisors, matrix_A, ramanujan, sigma_sum, solve_exact, totient, v2
from .fieldtower import FieldError, build_base_field
from .linearized import AdditivePoly, RadicalProfile, radical_profile
from .quadform import (
    DEFAULT_BRUTE_BOUND,
    QuadClassification,
    brute_sum,
    build_space,
    classify,
    field_for,
)
from .zsqrt2 import PolyZSqrt2, ZSqrt2, cyclo_rev, cyclo_split

__all__ = [
    "CurveSpec",
    "PeriodReport",
    "MultiplicitySet",
    "LFunctionReport",
    "PipelineError",
    "InfeasibleError",
    "DEFAULT_DIM_CEILING",
    "classification",
    "modified_sum",
    "determine_period",
    "solve_mults_even",
    "solve_mults_odd",
    "solve_mults",
    "predict_epsilon",
    "predicted_modified_sum",
    "factored_modified_sum",
    "point_count",
    "assemble",
    "count_points_exhaustive",
    "l_from_counts",
    "sign_convention_check",
    "random_spec",
    "seed_corpus",
]

DEFAULT_DIM_CEILING = 4096


class PipelineError(AssertionError):
    """An internal consistency check failed."""


class InfeasibleError(RuntimeError):
    """The request exceeds the configured dimension ceiling."""


@dataclass(frozen=True)
class CurveSpec:
    """y^2 + y = x R(x) over F_{2^m} = F_2[t]/(field_modulus)."""

    m: int
    field_modulus: int
    R_coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "R_coeffs", tuple(self.R_coeffs))
        if self.m < 1:
            raise FieldError(f"m must be positive, got {self.m}")
        if not self.R_coeffs or self.R_coeffs[-1] == 0:
            raise FieldError("the leading coefficient a_d of R must be nonzero")
        if len(self.R_coeffs) < 2:
            raise FieldError("R must have 2-degree d >= 1 (d = 0 is outside the family)")

    @classmethod
    def default(cls, m: int, R_coeffs) -> "CurveSpec":
        return cls(m, build_base_field(m).modulus, tuple(R_coeffs))

    @property
    def d(self) -> int:
        return len(self.R_coeffs) - 1

    @property
    def genus(self) -> int:
        return 1 << (self.d - 1)

    def base(self):
        return build_base_field(self.m, self.field_modulus)

    def additive(self) -> AdditivePoly:
        return AdditivePoly(self.base(), self.R_coeffs)


@dataclass(frozen=True)
class PeriodReport:
    N: int
    N_odd: int
    a: int
    c_table: dict[int, int]
    eps_table: dict[int, int]
    eps_N: int
    eps_2N: int
    D: int
    case_tag: str
    m: int

    def c_of(self, n: int) -> int:
        return self.c_table[gcd(n, self.N)]


@dataclass
class MultiplicitySet:
    """Exponents of the cyclotomic factors of L*.

    ``plain`` maps ell to the exponent of Phi_ell (every ell for even m,
    v2(ell) <= 2 for odd m); ``split`` maps ell to (m_plus, m_minus) for
    Phi_ell^+ and Phi_ell^-.  ``M_plus``/``M_minus`` keep the rational
    unknowns of the odd-m systems.  Zero exponents are omitted.
    """

    mode: str
    plain: dict[int, int] = field(default_factory=dict)
    split: dict[int, tuple[int, int]] = field(default_factory=dict)
    M_plus: dict[int, Fraction] = field(default_factory=dict)
    M_minus: dict[int, Fraction] = field(default_factory=dict)
    sign_convention: str = "minus"

    def degree(self) -> int:
        return (sum(k * totient(l) for l, k in self.plain.items())
                + sum((p + q) * totient(l) // 2 for l, (p, q) in self.split.items()))

    def ells(self) -> list[int]:
        return sorted(set(self.plain) | set(self.split))


@dataclass
class LFunctionReport:
    spec: CurveSpec
    period: PeriodReport
    mults: MultiplicitySet
    Lstar: PolyZSqrt2
    L: list[int]
    zeta_denominator: list[int]
    point_counts: dict[int, int]

    def count(self, n: int) -> int:
        return point_count(self.spec, self.mults, n)


# -- classification cache ----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _classification(spec: CurveSpec, n: int) -> QuadClassification:
    return classify(build_space(spec.additive(), n))


def classification(spec: CurveSpec, n: int, dim_ceiling: int = DEFAULT_DIM_CEILING) -> QuadClassification:
    if n < 1:
        raise ValueError("n must be positive")
    if spec.m * n > dim_ceiling:
        raise InfeasibleError(f"form dimension {spec.m * n} exceeds the ceiling {dim_ceiling}")
    return _classification(spec, n)


@functools.lru_cache(maxsize=None)
def _profile(spec: CurveSpec) -> RadicalProfile:
    return radical_profile(spec.additive())


def _modified(eps: int, c: int) -> ZSqrt2:
    """eps 2^(c/2) in Z[sqrt 2]."""
    if c % 2 == 0:
        return ZSqrt2(eps << (c // 2), 0)
    return ZSqrt2(0, eps << (c // 2))


def modified_sum(spec: CurveSpec, n: int, dim_ceiling: int = DEFAULT_DIM_CEILING) -> ZSqrt2:
    """S_n* = S_n / sqrt2^(mn) = eps_n 2^(c_n/2) from the Arf classification."""
    cls = classification(spec, n, dim_ceiling)
    return _modified(cls.epsilon, cls.c)


# -- period ---------------------------------------------------------------------------

def determine_period(spec: CurveSpec, dim_ceiling: int = DEFAULT_DIM_CEILING) -> PeriodReport:
    prof = _profile(spec)
    N = prof.N
    if 2 * N * spec.m > dim_ceiling:
        raise InfeasibleError(
            f"the largest form has dimension {2 * N * spec.m}, above the ceiling {dim_ceiling}")
    eps = {}
    for n in divisors(2 * N):
        cls = classification(spec, n, dim_ceiling)
        if cls.c != prof.c[n]:
            raise PipelineError(f"radical dimension {cls.c} != gcd value {prof.c[n]} at n={n}")
        eps[n] = cls.epsilon
    eN, e2N = eps[N], eps[2 * N]
    if eN == -1:
        D, tag = N, "i"
    elif eN == 1:
        if e2N != -1:
            raise PipelineError("eps_N = 1 forces eps_2N = -1")
        D, tag = 2 * N, "ii"
    elif e2N == -1:
        D, tag = 2 * N, "iiia"
    elif e2N == 1:
        D, tag = 4 * N, "iiib"
    else:
        raise PipelineError("eps_N = eps_2N = 0 contradicts the radical being trivial for q_2N")
    return PeriodReport(N=N, N_odd=prof.N_odd, a=prof.a, c_table=dict(prof.c), eps_table=eps,
                        eps_N=eN, eps_2N=e2N, D=D, case_tag=tag, m=spec.m)


def _S(rep: PeriodReport, n: int) -> ZSqrt2:
    return _modified(rep.eps_table[n], rep.c_table[n])


# -- multiplicity systems ----------------------------------------------------------------

def _plus_system(rep: PeriodReport, part) -> dict[int, Fraction]:
    """The four shapes shared by m_ell (even m) and M_ell^+ (odd m).

    ``part`` maps S_n* to the rational number on the right-hand side.
    """
    N, a, No = rep.N, rep.a, rep.N_odd
    if rep.case_tag in ("i", "iiia"):
        top = N if rep.case_tag == "i" else 2 * N
        divs = divisors(top)
        A = matrix_A(top).as_lists()
        sol = solve_exact(A, [-part(_S(rep, d)) for d in divs])
        return dict(zip(divs, sol))
    shift = a if rep.case_tag == "ii" else a + 1
    divs = divisors(No)
    A = [[(1 << shift) * x for x in row] for row in matrix_A(No).as_lists()]
    sol = solve_exact(A, [part(_S(rep, (1 << shift) * d)) for d in divs])
    return {(1 << (shift + 1)) * l: x for l, x in zip(divs, sol)}


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise PipelineError(f"{what} = {x} is not an integer")
    if x < 0:
        raise PipelineError(f"{what} = {x} is negative")
    return int(x)


def _check_mults(spec: CurveSpec, rep: PeriodReport, ms: MultiplicitySet) -> None:
    if ms.degree() != 1 << spec.d:
        raise PipelineError(f"total degree {ms.degree()} != 2^d = {1 << spec.d}")
    for l in ms.ells():
        if rep.D % l:
            raise PipelineError(f"factor order {l} does not divide the period {rep.D}")
        if rep.case_tag == "ii" and v2(l) != rep.a + 1:
            raise PipelineError(f"case ii needs v2({l}) = {rep.a + 1}")
        if rep.case_tag == "iiib" and v2(l) != rep.a + 2:
            raise PipelineError(f"case iiib needs v2({l}) = {rep.a + 2}")


def solve_mults_even(spec: CurveSpec, rep: PeriodReport) -> MultiplicitySet:
    if spec.m % 2:
        raise ValueError("solve_mults_even needs an even base degree m")

    def part(s: ZSqrt2) -> int:
        if s.b:
            raise PipelineError(f"S* = {s} is irrational for even m")
        return s.a

    sol = _plus_system(rep, part)
    ms = MultiplicitySet("even-m")
    for l, x in sol.items():
        k = _as_int(x, f"m_{l}")
        if k:
            ms.plain[l] = k
    ms.M_plus = dict(sol)
    _check_mults(spec, rep, ms)
    return ms


def _minus_layer(rep: PeriodReport, sign: int) -> dict[int, Fraction]:
    """Solve sum_{l'} M^-_{8l'} sigma_{8l'}(n) = sign * S_n* for n | N'.

    sign = -1 follows from the log-derivative identity for S_n*; sign = +1
    is the opposite global sign, kept so the two can be compared.
    """
    if rep.D % 8:
        return {}
    divs = divisors(rep.N_odd)
    # every sigma_{8l'}(n) with n odd lies in sqrt2 * Z; compare b-parts
    A = [[sigma_sum(8 * l, n).b for l in divs] for n in divs]
    rhs = [sign * _S(rep, n).b for n in divs]
    for n in divs:
        if _S(rep, n).a:
            raise PipelineError(f"S_{n}* has a rational part for odd m and odd n")
    return {8 * l: x for l, x in zip(divs, solve_exact(A, rhs))}


def solve_mults_odd(spec: CurveSpec, rep: PeriodReport, sign: int = -1) -> MultiplicitySet:
    if spec.m % 2 == 0:
        raise ValueError("solve_mults_odd needs an odd base degree m")
    Mp = _plus_system(rep, lambda s: s.a)
    Mm = _minus_layer(rep, sign)
    ms = MultiplicitySet("odd-m", M_plus=dict(Mp), M_minus=dict(Mm),
                         sign_convention="minus" if sign == -1 else "plus")
    for l in sorted(set(Mp) | set(Mm)):
        P, Q = Mp.get(l, Fraction(0)), Mm.get(l, Fraction(0))
        if v2(l) <= 2:
            if Q:
                raise PipelineError(f"M^-_{l} must vanish")
            k = _as_int(P, f"m_{l}")
            if k:
                ms.plain[l] = k
        else:
            mp, mm = _as_int(P + Q, f"m+_{l}"), _as_int(P - Q, f"m-_{l}")
            if mp or mm:
                ms.split[l] = (mp, mm)
    _check_mults(spec, rep, ms)
    return ms


def solve_mults(spec: CurveSpec, rep: PeriodReport) -> MultiplicitySet:
    return solve_mults_even(spec, rep) if spec.m % 2 == 0 else solve_mults_odd(spec, rep)


# -- invariants for every n ------------------------------------------------------------

def predict_epsilon(rep: PeriodReport, n: int) -> int:
    """eps_n for any n >= 1 from the table on the divisors of 2N."""
    if n < 1:
        raise ValueError("n must be positive")
    N, a, eps = rep.N, rep.a, rep.eps_table
    if rep.m % 2 and n % 2:
        g = gcd(n, rep.N_odd)
        return chi(n * g) * eps[g]
    v = v2(n)
    tag = rep.case_tag
    if tag == "i":
        return eps[gcd(n, N)]
    if tag == "iiia":
        return eps[gcd(n, 2 * N)]
    if tag == "ii":
        if v < a:
            return 0
        e = eps[gcd(n, N)]
        return e if v == a else -e
    # iiib
    if v <= a:
        return 0
    e = eps[gcd(n, 2 * N)]
    return e if v == a + 1 else -e


def predicted_modified_sum(rep: PeriodReport, n: int) -> ZSqrt2:
    return _modified(predict_epsilon(rep, n), rep.c_of(n))


def factored_modified_sum(ms: MultiplicitySet, n: int) -> ZSqrt2:
    """S_n* = -sum M+_l c_l(n) - sum M-_l sigma_l(n) from the multiplicities."""
    ra = Fraction(0)
    rb = Fraction(0)
    for l, x in ms.M_plus.items():
        if x:
            ra -= x * ramanujan(l, n)
    for l, x in ms.M_minus.items():
        if x:
            rb -= x * sigma_sum(l, n).b
    if ra.denominator != 1 or rb.denominator != 1:
        raise PipelineError(f"S_{n}* = {ra} + {rb} sqrt2 is not an algebraic integer")
    return ZSqrt2(int(ra), int(rb))


def point_count(spec: CurveSpec, ms: MultiplicitySet, n: int) -> int:
    """#C(F_{2^{mn}}) = 1 + 2^{mn} + S_n for any n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    S = factored_modified_sum(ms, n).times_sqrt2_power(spec.m * n)
    if S.b:
        raise PipelineError(f"S_{n} is irrational")
    return 1 + (1 << (spec.m * n)) + S.a


# -- assembly -----------------------------------------------------------------------------

def _lstar(ms: MultiplicitySet) -> PolyZSqrt2:
    out = PolyZSqrt2.one()
    for l, k in sorted(ms.plain.items()):
        out = out * PolyZSqrt2(cyclo_rev(l)) ** k
    for l, (p, q) in sorted(ms.split.items()):
        plus, minus = cyclo_split(l)
        out = out * plus**p * minus**q
    return out


def _descale(spec: CurveSpec, Lstar: PolyZSqrt2) -> list[int]:
    L = []
    for k, c in enumerate(Lstar.coeffs):
        v = c.times_sqrt2_power(spec.m * k)
        if v.b:
            raise PipelineError(f"coefficient {k} of L is irrational")
        L.append(v.a)
    return L


def assemble(spec: CurveSpec, counts_upto: int = 8,
             dim_ceiling: int = DEFAULT_DIM_CEILING) -> LFunctionReport:
    rep = determine_period(spec, dim_ceiling)
    ms = solve_mults(spec, rep)
    Lstar = _lstar(ms)
    L = _descale(spec, Lstar)
    if len(L) != (1 << spec.d) + 1 or L[0] != 1:
        raise PipelineError(f"L has degree {len(L) - 1} or L(0) = {L[0]}")
    q = 1 << spec.m
    counts = {n: point_count(spec, ms, n) for n in range(1, counts_upto + 1)}
    return LFunctionReport(spec, rep, ms, Lstar, L, [1, -(1 + q), q], counts)


# -- oracles --------------------------------------------------------------------------------

def count_points_exhaustive(spec: CurveSpec, n: int, bound: int = DEFAULT_BRUTE_BOUND) -> int:
    """Affine solutions (x, y) of y^2 + y = x R(x) over F_{2^{mn}}, plus one."""
    R = spec.additive()
    ext = field_for(R.ctx, n)
    if ext.degree > min(bound, 26):
        raise InfeasibleError(f"exhaustive count over F_2^{ext.degree} exceeds the bound")
    elems = np.arange(ext.order, dtype=np.uint64)
    hits = np.bincount((ext.square(elems) ^ elems).astype(np.int64), minlength=ext.order)
    fx = ext.mul(elems, R.eval(ext, elems))
    return 1 + int(hits[fx.astype(np.int64)].sum())


def l_from_counts(spec: CurveSpec, counts: list[int]) -> list[int]:
    """L(T) from #C(F_{2^{mn}}), n = 1..2^d, by Newton's identities.

    With S_n = #C - 1 - q^n = -(sum alpha_i^n), the coefficients e_k of
    L = prod (1 - alpha_i T) satisfy k e_k = sum_{j=1..k} (-1)^(j-1) e_{k-j} p_j
    where p_j = sum alpha_i^j.
    """
    q = 1 << spec.m
    p = [None] + [-(c - 1 - q**n) for n, c in enumerate(counts, start=1)]
    e = [Fraction(1)]
    for k in range(1, len(counts) + 1):
        acc = sum((-1) ** (j - 1) * e[k - j] * p[j] for j in range(1, k + 1))
        e.append(acc / k)
    # L = sum (-1)^k e_k T^k
    out = []
    for k, x in enumerate(e):
        if x.denominator != 1:
            raise PipelineError("non-integral L coefficient from point counts")
        out.append((-1) ** k * int(x))
    return out


def sign_convention_check(spec: CurveSpec, brute_bound: int = DEFAULT_BRUTE_BOUND) -> dict:
    """Solve the negative-multiplicity layer under both sign conventions and
    compare the S_1 each one reconstructs with an exhaustive sum."""
    if spec.m % 2 == 0:
        return {"applicable": False, "reason": "even m has no negative multiplicities"}
    rep = determine_period(spec)
    brute = brute_sum(spec.additive(), 1, brute_bound)
    out = {"applicable": True, "brute_S1": brute, "conventions": {}}
    for name, sign in (("minus", -1), ("plus", 1)):
        entry = {"rhs_sign": "-S_n*" if sign == -1 else "+S_n*"}
        ms = MultiplicitySet("odd-m", M_plus=_plus_system(rep, lambda s: s.a),
                             M_minus=_minus_layer(rep, sign))
        S1 = factored_modified_sum(ms, 1).times_sqrt2_power(spec.m)
        entry["M_minus"] = {l: x for l, x in ms.M_minus.items()}
        entry["S1"] = S1.a if not S1.b else S1
        entry["matches_brute"] = (S1 == brute)
        out["conventions"][name] = entry
    out["adopted"] = "minus"
    if not out["conventions"]["minus"]["matches_brute"]:
        raise PipelineError("the adopted convention does not reproduce the exhaustive S_1")
    return out


def random_spec(rng, m: int, d: int) -> CurveSpec:
    """A uniformly random R of 2-degree exactly d over the default F_{2^m}."""
    q = 1 << m
    coeffs = [rng.randrange(q) for _ in range(d)] + [rng.randrange(1, q)]
    return CurveSpec.default(m, coeffs)


def seed_corpus(count: int, seed: int, ms=(1, 2), ds=(1, 2, 3)) -> list[CurveSpec]:
    import random

    rng = random.Random(seed)
    return [random_spec(rng, rng.choice(ms), rng.choice(ds)) for _ in range(count)]
