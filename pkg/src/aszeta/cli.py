"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 input error,
3 feasibility refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import lfun
from .fieldtower import FieldError, build_base_field
from .lfun import (
    DEFAULT_DIM_CEILING,
    CurveSpec,
    InfeasibleError,
    MultiplicitySet,
    PipelineError,
)
from .quadform import BruteForceRefused, brute_sum, exp_sum
from .suzuki import (
    SuzukiParams,
    suzuki_c,
    suzuki_curve_count,
    suzuki_curve_count_exhaustive,
    suzuki_epsilon,
)
from .zsqrt2 import PolyZSqrt2, ZSqrt2

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3


class SpecError(ValueError):
    pass


# -- spec files ------------------------------------------------------------------------------

def _hex(s) -> int:
    if isinstance(s, int):
        return s
    try:
        return int(str(s).strip(), 16)
    except ValueError as exc:
        raise SpecError(f"not a hexadecimal bit string: {s!r}") from exc


def parse_spec(text: str) -> CurveSpec:
    """Parse a curve spec given as JSON or as key=value lines.

    Keys: m (decimal), field_modulus (hex, bit i = coefficient of t^i;
    optional, defaults to the smallest irreducible), R (hex coefficients
    a_0..a_d, comma separated in key=value form).
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from exc
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SpecError(f"line {lineno}: expected key=value")
            key, value = (p.strip() for p in line.split("=", 1))
            raw[key] = [v for v in (x.strip() for x in value.split(",")) if v] if key == "R" else value
    unknown = set(raw) - {"m", "field_modulus", "R"}
    if unknown:
        raise SpecError(f"unknown keys: {sorted(unknown)}")
    if "m" not in raw or "R" not in raw:
        raise SpecError("a spec needs both m and R")
    try:
        m = int(raw["m"])
    except (TypeError, ValueError) as exc:
        raise SpecError(f"m must be an integer, got {raw['m']!r}") from exc
    if m < 1:
        raise SpecError(f"m must be positive, got {m}")
    R = raw["R"]
    if isinstance(R, str):
        R = [x for x in R.split(",") if x.strip()]
    coeffs = tuple(_hex(x) for x in R)
    modulus = _hex(raw["field_modulus"]) if raw.get("field_modulus") not in (None, "") else None
    base = build_base_field(m, modulus)  # raises FieldError on bad moduli
    for i, a in enumerate(coeffs):
        if not 0 <= a < base.order:
            raise SpecError(f"coefficient a_{i} = {a:#x} is not in F_2^{m}")
    return CurveSpec(m, base.modulus, coeffs)


def emit_spec(spec: CurveSpec, fmt: str = "kv") -> str:
    if fmt == "json":
        return json.dumps({"m": spec.m, "field_modulus": format(spec.field_modulus, "x"),
                           "R": [format(a, "x") for a in spec.R_coeffs]})
    return (f"m={spec.m}\nfield_modulus={spec.field_modulus:x}\n"
            f"R={','.join(format(a, 'x') for a in spec.R_coeffs)}\n")


def _read_spec(path: str) -> CurveSpec:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    return parse_spec(text)


# -- JSON helpers ----------------------------------------------------------------------------

def _z(x: ZSqrt2) -> dict:
    return x.to_json()


def _poly(p: PolyZSqrt2) -> list[dict]:
    return [_z(c) for c in p.coeffs]


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _curve(spec: CurveSpec) -> dict:
    return {"m": spec.m, "field_modulus": format(spec.field_modulus, "x"),
            "R": [format(a, "x") for a in spec.R_coeffs], "d": spec.d, "genus": spec.genus}


def _period_json(rep: lfun.PeriodReport) -> dict:
    return {
        "N": rep.N, "N_odd": rep.N_odd, "a": rep.a, "D": rep.D, "case_tag": rep.case_tag,
        "eps_N": rep.eps_N, "eps_2N": rep.eps_2N,
        "c_table": {str(n): rep.c_table[n] for n in sorted(rep.c_table)},
        "eps_table": {str(n): rep.eps_table[n] for n in sorted(rep.eps_table)},
    }


def _mults_json(ms: MultiplicitySet) -> dict:
    recs = [{"l": l, "m": k} for l, k in sorted(ms.plain.items())]
    recs += [{"l": l, "m_plus": p, "m_minus": q} for l, (p, q) in sorted(ms.split.items())]
    recs.sort(key=lambda r: r["l"])
    return {
        "mode": ms.mode,
        "records": recs,
        "M_plus": {str(l): _frac(x) for l, x in sorted(ms.M_plus.items())},
        "M_minus": {str(l): _frac(x) for l, x in sorted(ms.M_minus.items())},
        "sign_convention": ms.sign_convention,
    }


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# -- commands ------------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    spec = _read_spec(args.spec)
    rep = lfun.determine_period(spec, args.dim_ceiling)
    _dump({"curve": _curve(spec), **_period_json(rep),
           "bounds": {"dim_ceiling": args.dim_ceiling, "largest_form": 2 * rep.N * spec.m}})
    return EXIT_OK


def _report(spec: CurveSpec, args) -> lfun.LFunctionReport:
    return lfun.assemble(spec, counts_upto=args.n_max, dim_ceiling=args.dim_ceiling)


def cmd_lfunction(args) -> int:
    spec = _read_spec(args.spec)
    r = _report(spec, args)
    _dump({
        "curve": _curve(spec),
        **_period_json(r.period),
        "multiplicities": _mults_json(r.mults),
        "Lstar": _poly(r.Lstar),
        "L": [str(c) for c in r.L],
        "zeta_denominator": [str(c) for c in r.zeta_denominator],
        "point_counts": {str(n): str(c) for n, c in sorted(r.point_counts.items())},
    })
    return EXIT_OK


def _n_values(args) -> list[int]:
    if args.n is not None:
        values = [args.n]
    else:
        values = list(range(1, args.n_max + 1))
    if any(n < 1 for n in values):
        raise SpecError("n must be positive")
    return values


def cmd_count(args) -> int:
    spec = _read_spec(args.spec)
    ns = _n_values(args)
    rep = lfun.determine_period(spec, args.dim_ceiling)
    ms = lfun.solve_mults(spec, rep)
    _dump({"curve": _curve(spec),
           "point_counts": {str(n): str(lfun.point_count(spec, ms, n)) for n in ns}})
    return EXIT_OK


def _corrupt(ms: MultiplicitySet) -> MultiplicitySet:
    """Fault injection: raise the multiplicity of the smallest order by one."""
    l = min(ms.M_plus)
    bad = MultiplicitySet(ms.mode, dict(ms.plain), dict(ms.split), dict(ms.M_plus),
                          dict(ms.M_minus), ms.sign_convention)
    bad.M_plus[l] += 1
    return bad


def run_verification(spec: CurveSpec, brute_bound: int, dim_ceiling: int,
                     inject_fault: bool = False) -> dict:
    checks = []

    def record(name, n, expected, got):
        checks.append({"check": name, "n": n, "expected": str(expected), "got": str(got),
                       "pass": expected == got})

    rep = lfun.determine_period(spec, dim_ceiling)
    ms = lfun.solve_mults(spec, rep)
    if inject_fault:
        ms = _corrupt(ms)
    R = spec.additive()
    n_brute = brute_bound // spec.m
    for n in range(1, n_brute + 1):
        record("exp_sum_vs_brute_sum", n, brute_sum(R, n, brute_bound),
               exp_sum(R, n, lfun.classification(spec, n, dim_ceiling)).a)
        record("point_count_vs_enumeration", n, lfun.count_points_exhaustive(spec, n, brute_bound),
               lfun.point_count(spec, ms, n))
    if n_brute >= 1 << spec.d:
        counts = [lfun.count_points_exhaustive(spec, n, brute_bound) for n in range(1, (1 << spec.d) + 1)]
        record("L_vs_newton_identities", None, lfun.l_from_counts(spec, counts),
               lfun._descale(spec, lfun._lstar(ms)) if not inject_fault else "corrupted")
    eps_limit = min(3 * rep.D, dim_ceiling // spec.m)
    for n in range(1, eps_limit + 1):
        record("predicted_vs_arf_epsilon", n, lfun.classification(spec, n, dim_ceiling).epsilon,
               lfun.predict_epsilon(rep, n))
    out = {"curve": _curve(spec), **_period_json(rep),
           "bounds": {"brute_bound": brute_bound, "dim_ceiling": dim_ceiling, "eps_limit": eps_limit}}
    if spec.m % 2 and brute_bound >= spec.m:
        sc = lfun.sign_convention_check(spec, brute_bound)
        out["sign_convention"] = {
            "adopted": sc["adopted"],
            "description": "negative-multiplicity layer solved with right-hand side -S_n*",
            "brute_S1": str(sc["brute_S1"]),
            "conventions": {
                name: {"rhs": e["rhs_sign"], "S1": str(e["S1"]), "matches_brute": e["matches_brute"],
                       "M_minus": {str(l): _frac(x) for l, x in sorted(e["M_minus"].items())}}
                for name, e in sc["conventions"].items()
            },
        }
    failed = sum(not c["pass"] for c in checks)
    out["checks"] = checks
    out["summary"] = {"run": len(checks), "failed": failed, "pass": failed == 0}
    if n_brute == 0:
        out["summary"]["warning"] = "no exhaustive comparisons ran: the brute-force bound is below m"
    return out


def cmd_verify(args) -> int:
    spec = _read_spec(args.spec)
    if args.brute_bound < 0:
        raise SpecError("--brute-bound must be nonnegative")
    out = run_verification(spec, args.brute_bound, args.dim_ceiling, args.inject_fault)
    if "warning" in out["summary"]:
        print(f"warning: {out['summary']['warning']}", file=sys.stderr)
    _dump(out)
    return EXIT_OK if out["summary"]["pass"] else EXIT_MISMATCH


def cmd_suzuki(args) -> int:
    if args.h < 1:
        raise SpecError("h must be at least 1")
    p = SuzukiParams(args.h)
    rows = []
    ok = True
    for n in range(1, args.n_max + 1):
        row = {"n": n, "epsilon": suzuki_epsilon(args.h, n), "c": suzuki_c(args.h, n),
               "count": str(suzuki_curve_count(args.h, n))}
        if n <= args.enum_bound:
            enum = suzuki_curve_count_exhaustive(args.h, n, args.enum_bound)
            row["count_enumerated"] = str(enum)
            ok &= enum == suzuki_curve_count(args.h, n)
        rows.append(row)
    out = {"h": args.h, "q0": p.q0, "q": p.q, "table": rows}
    if args.cross_check:
        spec = CurveSpec.default(1, p.R_coeffs)
        rep = lfun.determine_period(spec, args.dim_ceiling)
        bad = [n for n in range(1, args.cross_check_max + 1)
               if lfun.predict_epsilon(rep, n) != suzuki_epsilon(args.h, n)
               or rep.c_of(n) != suzuki_c(args.h, n)]
        out["cross_check"] = {"n_max": args.cross_check_max, "mismatches": bad, "pass": not bad}
        ok &= not bad
    _dump(out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_seed_corpus(args) -> int:
    ms = tuple(args.m) if args.m else (1, 2)
    ds = tuple(args.d) if args.d else (1, 2, 3)
    for spec in lfun.seed_corpus(args.corpus_size, args.seed, ms, ds):
        sys.stdout.write(emit_spec(spec, "json") + "\n")
    return EXIT_OK


# -- entry point -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aszeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", help="curve spec file (JSON or key=value), '-' for stdin")
        p.add_argument("--dim-ceiling", type=int, default=DEFAULT_DIM_CEILING,
                       help="largest quadratic-form dimension to classify")
        return p

    with_spec("analyze", "splitting degree, radical and invariant tables, period")
    p = with_spec("lfunction", "full L-function report")
    p.add_argument("--n-max", type=int, default=8, help="point counts for n = 1..n-max")
    p = with_spec("count", "point counts over F_{2^{mn}}")
    p.add_argument("--n", type=int, help="a single extension degree")
    p.add_argument("--n-max", type=int, default=8, help="counts for n = 1..n-max")
    p = with_spec("verify", "compare closed forms with exhaustive oracles")
    p.add_argument("--brute-bound", type=int, default=16, help="largest mn enumerated")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("suzuki", help="closed forms for the Suzuki family")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--enum-bound", type=int, default=12, help="largest n enumerated exhaustively")
    p.add_argument("--cross-check", action="store_true", help="compare with the generic pipeline")
    p.add_argument("--cross-check-max", type=int, default=100)
    p.add_argument("--dim-ceiling", type=int, default=DEFAULT_DIM_CEILING)

    p = sub.add_parser("seed-corpus", help="emit random valid specs, one JSON object per line")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus-size", type=int, default=50)
    p.add_argument("--m", type=int, action="append", help="allowed base degrees (repeatable)")
    p.add_argument("--d", type=int, action="append", help="allowed 2-degrees (repeatable)")
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "lfunction": cmd_lfunction,
    "count": cmd_count,
    "verify": cmd_verify,
    "suzuki": cmd_suzuki,
    "seed-corpus": cmd_seed_corpus,
}


def main(argv: Sequence[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # point counts for large n have many digits
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (SpecError, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InfeasibleError, BruteForceRefused) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PipelineError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
