"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid datum or input file,
3 query outside the supported range.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .arith import factor_integer, format_factored_rational
from .errors import KuZetaError, OutOfRangeError, ValidationError
from .model import KTheoryDatum, builtin, datum_to_document, load_datum, validate
from .zeta import (
    functional_equation_residual,
    homotopy_group_order,
    provisional_limit_numeric,
    verify_euler,
    zeta_factorization,
    zeta_ku_special_value,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_RANGE = 0, 1, 2, 3
# seconds of Pollard rho per printed integer; what is left prints as unfactored
FACTOR_BUDGET = 1.0

_SHORTHAND = re.compile(r"^(sphere|cpn(\d+)|moore(\d+))$")
_VALUE_FLAGS = ("--at", "--degrees", "--s")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def resolve_datum(ref: str) -> KTheoryDatum:
    """A file path, or one of the shorthands ``sphere``, ``cpnN``, ``mooreQ``."""
    path = Path(ref)
    if path.exists():
        return load_datum(path)
    m = _SHORTHAND.match(ref)
    if not m:
        raise ValidationError(f"{ref!r} is neither a readable file nor a builtin (sphere, cpnN, mooreQ)")
    if m.group(2) is not None:
        return validate(builtin("cpn", int(m.group(2))))
    if m.group(3) is not None:
        return builtin("moore", int(m.group(3)))
    return builtin("sphere")


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _factored_int(n: int) -> str | None:
    if abs(n) < 4:
        return None
    f = factor_integer(abs(n), time_budget=FACTOR_BUDGET)
    if len(f.factors) == 1 and next(iter(f.factors.values())) == 1 and f.complete and not f.probable:
        return None
    return ("-" if n < 0 else "") + str(f)


def _fraction_record(q: Fraction) -> dict:
    rec = {"fraction": _frac(q), "numerator": str(q.numerator), "denominator": str(q.denominator)}
    if q:
        rec["factored"] = format_factored_rational(q, FACTOR_BUDGET)
    return rec


def _complex_str(z: complex) -> str:
    return f"{z.real:.15g}{z.imag:+.15g}i"


def _complex_record(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise _UsageError(f"cannot parse complex number {text!r}") from None


def _parse_degrees(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise _UsageError(f"degrees must look like lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise _UsageError(f"empty degree range {text!r}")
    return range(lo, hi + 1)


# --- commands ---------------------------------------------------------------

def _factorization_doc(x: KTheoryDatum) -> dict:
    fac = zeta_factorization(x)
    return {
        "provisional": {str(w): e for w, e in sorted(fac.provisional.items())},
        "torsion": [
            {
                "weight": t.weight,
                "prime": t.prime,
                "characters": [{"modulus": c.modulus, "exponents": list(c.exponents)} for c in t.characters],
            }
            for t in fac.torsion
        ],
        "formula": fac.describe(),
    }


def cmd_describe(x: KTheoryDatum, args) -> tuple[dict, list[str]]:
    doc = datum_to_document(x)
    out = {
        "datum": {**doc, "weights": {str(w): c for w, c in doc["weights"].items()}},
        "a": x.a,
        "b": x.b,
        "factorization": _factorization_doc(x),
    }
    lines = [
        f"name: {x.name}",
        f"excluded primes: {{{', '.join(map(str, sorted(x.excluded_primes)))}}}",
        f"skeletal splitting: {x.skeletal_splitting}",
        "weights:",
    ]
    for w, c in x.cells:
        lines.append(
            f"  {w}: beta_even={c.beta_even} beta_odd={c.beta_odd} torsion_order={c.torsion_order}"
        )
    lines.append(f"a = {x.a}, b = {x.b}")
    lines.append(f"zeta_KU(s) = {out['factorization']['formula']}")
    return out, lines


def cmd_value(x: KTheoryDatum, args) -> tuple[dict, list[str]]:
    r = zeta_ku_special_value(x, args.at)
    factors = []
    lines = [f"special value at s = {r.argument}"]
    for w, (t, e, sv) in sorted(r.provisional.items()):
        label = f"zeta({t})" + (f"^{e}" if e != 1 else "")
        rec = {"weight": w, "label": label, "kind": sv.kind, "order": sv.order}
        if sv.kind == "value":
            rec.update(_fraction_record(sv.value))
        factors.append(rec)
        lines.append(f"  weight {w}: {label} = {sv}")
    for (w, ell), v in sorted(r.torsion.items()):
        label = f"L_{ell}({r.argument - w})"
        rec = {"weight": w, "prime": ell, "label": label, "kind": "value"}
        rec.update(_fraction_record(v))
        factors.append(rec)
        lines.append(f"  weight {w}, l = {ell}: {label} = {_frac(v)}")
        if v:
            lines.append(f"      = {format_factored_rational(v, FACTOR_BUDGET)}")
    total = {"kind": r.total.kind, "order": r.total.order}
    if r.total.kind in ("value", "zero"):
        total.update(_fraction_record(r.total.value))
        lines.append(f"total: {_frac(r.total.value)}")
        if r.total.value:
            lines.append(f"  = {format_factored_rational(r.total.value, FACTOR_BUDGET)}")
        lines.append(f"denominator of total: {r.total.value.denominator}")
    else:
        lines.append(f"total: {r.total}")
    prod = r.factorwise_denominator_product
    lines.append(
        "product of factor denominators: " + (str(prod) if prod is not None else "undefined (pole)")
    )
    out = {
        "argument": r.argument,
        "factors": factors,
        "total": total,
        "factor_denominators": {k: v for k, v in r.factor_denominators.items()},
        "factor_denominator_product": prod,
    }
    return out, lines


def cmd_limit(x: KTheoryDatum, args) -> tuple[dict, list[str]]:
    r = provisional_limit_numeric(x, args.at)
    lines = [f"limit of the provisional zeta-function at s = {r.argument}: {_complex_str(r.value)}"]
    terms = []
    for w, e, label, coeff in r.leading_terms:
        terms.append({"weight": w, "exponent": e, "leading": label, "value": _complex_record(coeff)})
        lines.append(f"  weight {w} (exponent {e}): {label} = {_complex_str(coeff)}")
    for name, rec in r.comparisons.items():
        lines.append(f"  compare {name}: {rec['value']:.15g} (difference {rec['difference']:.3g})")
    out = {
        "argument": r.argument,
        "value": _complex_record(r.value),
        "leading_terms": terms,
        "comparisons": r.comparisons,
    }
    return out, lines


def cmd_orders(x: KTheoryDatum, args) -> tuple[dict, list[str]]:
    rows = []
    lines = []
    primes = "{" + ", ".join(map(str, sorted(x.excluded_primes))) + "}"
    for d in args.degrees:
        try:
            h = homotopy_group_order(x, d)
        except OutOfRangeError as exc:
            rows.append({"degree": d, "status": "outside theorem range", "reason": str(exc)})
            lines.append(f"{d}: outside theorem range")
            continue
        row = {
            "degree": d,
            "status": "ok",
            "order": str(h.order),
            "modulo": list(h.modulo),
            "branch": h.branch,
            "argument": h.argument,
            "note": h.note,
            "factor_denominators": [{"factor": k, "denominator": str(v)} for k, v in h.factor_denominators],
        }
        if h.note:
            lines.append(f"{d}: {h.order} ({h.note})")
        else:
            line = f"{d}: {h.order} (modulo primes {primes})"
            factored = _factored_int(h.order)
            if factored:
                line += f" = {factored}"
                row["factored"] = factored
            line += f"  [{h.branch} branch, argument {h.argument}]"
            lines.append(line)
        rows.append(row)
    return {"datum": x.name, "rows": rows}, lines


def cmd_verify(x: KTheoryDatum, args) -> tuple[dict, list[str]]:
    s = _parse_complex(args.s)
    if args.check == "euler":
        if args.bound is None:
            raise _UsageError("verify euler needs --bound")
        r = verify_euler(x, s, args.bound)
        lines = [
            f"s = {_complex_str(r.s)}, primes up to {r.bound}",
            f"truncated Euler product: {_complex_str(r.truncated)}",
            f"factorized value:        {_complex_str(r.factorized)}",
            f"absolute difference:     {r.difference:.3e}",
        ]
        out = {
            "s": _complex_record(r.s),
            "bound": r.bound,
            "truncated": _complex_record(r.truncated),
            "factorized": _complex_record(r.factorized),
            "difference": r.difference,
        }
        return out, lines
    r = functional_equation_residual(x, s)
    lines = [
        f"{r.kind} functional equation at s = {_complex_str(r.s)}",
        f"left  (s):     {_complex_str(r.left)}",
        f"right (1 - s): {_complex_str(r.right)}",
        f"sign: {r.sign:+d}",
        f"residual: {r.residual:.3e}",
    ]
    out = {
        "kind": r.kind,
        "s": _complex_record(r.s),
        "left": _complex_record(r.left),
        "right": _complex_record(r.right),
        "sign": r.sign,
        "residual": r.residual,
    }
    if r.root_number_product is not None:
        lines.append(f"product of root numbers: {_complex_str(r.root_number_product)}")
        out["root_number_product"] = _complex_record(r.root_number_product)
    return out, lines


# --- argument handling ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)

    parser = _Parser(prog="kuzeta", description="KU-local zeta-functions of finite complexes.")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("describe", parents=[fmt], help="show a datum and its factorization")
    p.add_argument("datum")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("value", parents=[fmt], help="exact special value")
    p.add_argument("datum")
    p.add_argument("--at", type=int, required=True)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("limit", parents=[fmt], help="numeric limit at a cancellation point")
    p.add_argument("datum")
    p.add_argument("--at", type=int, required=True)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("orders", parents=[fmt], help="orders of KU-local homotopy groups")
    p.add_argument("datum")
    p.add_argument("--degrees", required=True)
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("verify", parents=[fmt], help="numeric checks")
    p.add_argument("check", choices=("euler", "funceq"))
    p.add_argument("datum")
    p.add_argument("--s", required=True)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_values(argv: list[str]) -> list[str]:
    # "--degrees -13..-13" would otherwise be read as an unknown option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_values(argv))
        if args.command == "orders":
            args.degrees = _parse_degrees(args.degrees)
        x = resolve_datum(args.datum)
        out, lines = args.func(x, args)
    except _UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=stderr)
        return EXIT_INVALID
    except OutOfRangeError as exc:
        print(f"out of range: {exc}", file=stderr)
        return EXIT_RANGE
    except KuZetaError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    if args.format == "structured":
        print(json.dumps(out, indent=2, default=str), file=stdout)
    else:
        print("\n".join(lines), file=stdout)
    return EXIT_OK


def main(argv: list[str] | None = None) -> None:
    try:
        code = run(argv)
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.exit(code)
