"""Command-line front end: ``tanint {compute,table,eval,jn,ln,verify,oeis}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__, engine, oracle, sequences, series
from .symvalue import ConstAtom, SymValue, SymValueError, format_rational, to_dict, to_json, to_latex, to_text

FORMATS = ("text", "json", "csv", "latex")


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _digits(text: str) -> int:
    v = _nonneg(text)
    if v < 15:
        raise argparse.ArgumentTypeError("--digits must be at least 15")
    return v


def _positive_number(text: str) -> str:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return text


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # defaults live on the top-level parser; subparsers must not overwrite them
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=default("text"))
    p.add_argument("--digits", type=_digits, default=default(50))
    p.add_argument("--quiet", action="store_true", default=default(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanint", parents=[_global_flags(False)],
        description="Exact values of int_0^{pi/4} x^p tan^n x dx and related integrals.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_flags(True)]

    p = sub.add_parser("compute", parents=common, help="exact I(n, p)")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--p", type=_nonneg, required=True)

    p = sub.add_parser("table", parents=common, help="all I(n, p) up to the given bounds")
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--p-max", type=_nonneg, required=True)

    p = sub.add_parser("eval", parents=common, help="numeric value of I(n, p)")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--p", type=_nonneg, required=True)

    p = sub.add_parser("jn", parents=common, help="enclosure of int tan^n x/(1-x) dx")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--eps", type=_positive_number, default="1e-10")

    p = sub.add_parser("ln", parents=common, help="exact int_0^1 arctan^n x dx")
    p.add_argument("--n", type=_nonneg, required=True)

    p = sub.add_parser("verify", parents=common, help="check exact values against quadrature")
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--p-max", type=_nonneg, required=True)
    p.add_argument("--tol", type=_positive_number, default="1e-30")

    p = sub.add_parser("oeis", parents=common, help="look up a coefficient stream in the OEIS")
    p.add_argument("--terms", help="explicit comma-separated integers")
    p.add_argument("--atom", default="ln2", help="atom name (pi^1, ln2, pi*ln2, catalan, seed_Q) or rational")
    p.add_argument("--p", type=_nonneg, default=1)
    p.add_argument("--parity", choices=("even", "odd", "all"), default="all")
    p.add_argument("--n-max", type=_nonneg, default=14)
    p.add_argument("--normalize", default="abs+numerators")
    p.add_argument("--offline", action="store_true")
    return parser


# -- renderers ---------------------------------------------------------------

def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _value_rows(n: int, p: int, v: SymValue):
    rows = [(n, p, "1", format_rational(v.rational_part))] if v.rational_part else []
    rows += [(n, p, a.name, format_rational(c)) for a, c in sorted(v.terms.items(), key=lambda t: t[0].name)]
    return rows or [(n, p, "1", "0")]


def render_value(v: SymValue, fmt: str, n: int, p: int) -> str:
    if fmt == "json":
        return to_json(v)
    if fmt == "latex":
        return to_latex(v)
    if fmt == "csv":
        return _csv([("n", "p", "term", "coefficient")] + _value_rows(n, p, v))
    return to_text(v)


def render_table(entries, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{"n": n, "p": p, "value": to_dict(v)} for (n, p), v in entries],
                          sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        rows = [("n", "p", "term", "coefficient")]
        for (n, p), v in entries:
            rows += _value_rows(n, p, v)
        return _csv(rows)
    if fmt == "latex":
        lines = [rf"I^{{({p})}}_{{{n}}} &= {to_latex(v)} \\" for (n, p), v in entries]
        return "\n".join([r"\begin{align*}"] + lines + [r"\end{align*}"])
    return "\n".join(f"I({n},{p}) = {to_text(v)}" for (n, p), v in entries)


# -- commands ----------------------------------------------------------------

def cmd_compute(args) -> int:
    print(render_value(engine.compute(args.n, args.p), args.format, args.n, args.p))
    return 0


def cmd_table(args) -> int:
    print(render_table(engine.table(args.n_max, args.p_max), args.format))
    return 0


def cmd_eval(args) -> int:
    ctx = oracle.NumericContext(args.digits)
    s = ctx.mp.nstr(oracle.eval_numeric(engine.compute(args.n, args.p), ctx), args.digits)
    if args.format == "json":
        print(json.dumps({"n": args.n, "p": args.p, "digits": args.digits, "value": s}, sort_keys=True))
    elif args.format == "csv":
        print(_csv([("n", "p", "digits", "value"), (args.n, args.p, args.digits, s)]))
    else:
        print(s)
    return 0


def cmd_jn(args) -> int:
    try:
        enc = series.j_series(args.n, args.eps, args.digits)
    except series.InsufficientPrecision as exc:
        raise UsageError(str(exc))
    nstr = lambda x: oracle.mpmath.nstr(x, args.digits)  # noqa: E731
    lo, hi = nstr(enc.lo), nstr(enc.hi)
    if args.format == "json":
        print(json.dumps({"n": args.n, "eps": args.eps, "lo": lo, "hi": hi,
                          "terms_used": enc.terms_used}, sort_keys=True))
    elif args.format == "csv":
        print(_csv([("n", "eps", "lo", "hi", "terms_used"), (args.n, args.eps, lo, hi, enc.terms_used)]))
    else:
        print(f"J({args.n}) in [{lo}, {hi}]  terms_used={enc.terms_used}")
    return 0


def cmd_ln(args) -> int:
    print(render_value(series.l_integral(args.n), args.format, 2, args.n))
    return 0


def cmd_verify(args) -> int:
    ctx = oracle.NumericContext(args.digits)
    try:
        reports = oracle.verify(args.n_max, args.p_max, ctx, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc))
    nstr = lambda x: ctx.mp.nstr(x, 5)  # noqa: E731
    failed = [r for r in reports if not r.passed]
    if args.format == "json":
        print(json.dumps([{"n": r.id[0], "p": r.id[1], "abs_diff": nstr(r.abs_diff),
                           "tolerance": args.tol, "pass": r.passed} for r in reports],
                         sort_keys=True, separators=(",", ":")))
    elif args.format == "csv":
        print(_csv([("n", "p", "abs_diff", "tolerance", "pass")]
                   + [(r.id[0], r.id[1], nstr(r.abs_diff), args.tol, r.passed) for r in reports]))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"I({r.id[0]},{r.id[1]}) {status} abs_diff={nstr(r.abs_diff)}")
        print(f"{len(reports) - len(failed)}/{len(reports)} passed")
    return 1 if failed else 0


def _oeis_terms(args) -> list[int]:
    if args.terms:
        try:
            return [int(t) for t in args.terms.split(",")]
        except ValueError:
            raise UsageError(f"--terms must be comma-separated integers, got {args.terms!r}")
    try:
        atom = "rational_part" if args.atom == "rational" else ConstAtom.from_name(args.atom)
        q = sequences.CoeffQuery(atom, args.p, args.parity, args.n_max, args.normalize)
    except (SymValueError, ValueError) as exc:
        raise UsageError(str(exc))
    if q.normalize == "raw":
        raise UsageError("OEIS lookups need integers; pick a normalization other than raw")
    try:
        return sequences.query_terms(q)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_oeis(args) -> int:
    terms = _oeis_terms(args)
    try:
        res = sequences.oeis_lookup(terms, offline=args.offline)
    except sequences.OeisUnavailable as exc:
        print(f"tanint: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        print(json.dumps({"query_terms": res.query_terms, "from_cache": res.from_cache,
                          "matches": [{"id": i, "name": n} for i, n in res.matches]}, sort_keys=True))
    elif args.format == "csv":
        print(_csv([("id", "name")] + res.matches))
    else:
        print("query: " + sequences.query_string(res.query_terms))
        for i, name in res.matches:
            print(f"{i}  {name}")
        if not res.matches:
            print("no matches")
    return 0


COMMANDS = {"compute": cmd_compute, "table": cmd_table, "eval": cmd_eval, "jn": cmd_jn,
            "ln": cmd_ln, "verify": cmd_verify, "oeis": cmd_oeis}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.quiet:
        print(f"tanint {__version__}", file=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tanint: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
