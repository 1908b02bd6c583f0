"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager

from derangesum import derangement as dr
from derangesum import verify
from derangesum.exact import ELaurent, PrecisionExhausted, el_floor, factorial
from derangesum.permutations import EnumerationCapError, brute_sum_rule

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

TABLE_MAX = 500

DERANGEMENT_METHODS = {
    "table": dr.derangement,
    "sum": dr.d_sum,
    "pair": dr.d_pair_recurrence,
    "signed": dr.d_signed_recurrence,
    "floor": dr.d_floor_formula,
    "nearest": dr.d_nearest_formula,
}
SUM_METHODS = {
    "table": dr.sum_rule_lhs,
    "floor": dr.sum_rule_rhs,
    "parity": dr.sum_rule_parity_form,
    "brute": brute_sum_rule,
}
A_METHODS = {
    "recurrence": dr.a_recurrence,
    "closed": dr.a_closed_form,
}


def floor_factorial_over_e(n: int) -> int:
    return el_floor(ELaurent(0, 0, factorial(n)))


COMPUTE_KINDS = {
    "derangement": (DERANGEMENT_METHODS, "table"),
    "sum": (SUM_METHODS, "table"),
    "floor": ({"enclosure": floor_factorial_over_e}, "enclosure"),
    "a": (A_METHODS, "recurrence"),
}


class UsageError(Exception):
    pass


def _json_line(record: dict) -> str:
    return json.dumps(record, sort_keys=False, ensure_ascii=False)


@contextmanager
def _open_output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_compute(args) -> int:
    methods, default = COMPUTE_KINDS[args.kind]
    method = args.method or default
    if method not in methods:
        raise UsageError(
            f"method {method!r} not available for {args.kind}; "
            f"choose from {', '.join(methods)}"
        )
    try:
        value = methods[method](args.n)
    except (ValueError, EnumerationCapError) as exc:
        raise UsageError(str(exc)) from exc
    with _open_output(args.output) as out:
        if args.format == "json-lines":
            record = {
                "kind": args.kind,
                "n": str(args.n),
                "method": method,
                "value": str(value),
            }
            out.write(_json_line(record) + "\n")
        else:
            out.write(f"{value}\n")
    return EXIT_OK


TABLE_COLUMNS = ("n", "d_n", "s_n", "a_n_plus_1", "floor_n_plus_1_fact_over_e")


def table_rows(max_n: int):
    """Rows (n, D(n), S_n, A_{n+1}, floor((n+1)!/e)) for n = 0..max_n."""
    D = dr.TABLE.upto(max_n)
    s = 0
    a = 0  # A_1
    for n in range(max_n + 1):
        s += n * D[n]
        if n >= 1:
            N = n + 1
            a = N * a + (N - 1 if N % 2 else 0)
        yield (n, D[n], s, a, dr.sum_rule_rhs(n))


def cmd_table(args) -> int:
    if not 0 <= args.max_n <= TABLE_MAX:
        raise UsageError(f"max_n must lie in 0..{TABLE_MAX}, got {args.max_n}")
    consistent = True
    with _open_output(args.output) as out:
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(TABLE_COLUMNS)
        elif args.format == "plain":
            out.write("\t".join(TABLE_COLUMNS) + "\n")
        for row in table_rows(args.max_n):
            n, d, s, a, fl = row
            consistent &= s == a == fl == dr.sum_rule_parity_form(n)
            if args.format == "csv":
                writer.writerow(row)
            elif args.format == "json-lines":
                out.write(_json_line(dict(zip(TABLE_COLUMNS, map(str, row)))) + "\n")
            else:
                out.write("\t".join(map(str, row)) + "\n")
    if not consistent:
        print("table columns are inconsistent", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def _resolve_range(name: str, args) -> tuple[int, int]:
    _, full, quick = verify.CHECKERS[name]
    lo, hi = quick if args.quick else full
    if args.min is not None:
        lo = args.min
    if args.max is not None:
        hi = args.max
    return lo, hi


def _run_checker(name: str, args) -> verify.VerificationReport:
    checker = verify.CHECKERS[name][0]
    lo, hi = _resolve_range(name, args)
    if name == "hermite":
        return verify.verify_hermite_random(lo, hi, seed=args.seed)
    return checker(lo, hi)


def _emit_reports(reports, fmt: str, out) -> None:
    for report in reports:
        if fmt == "json-lines":
            out.write(_json_line(report.as_dict()) + "\n")
        else:
            out.write(report.render_text() + "\n")


def cmd_verify(args) -> int:
    if args.identity == "all":
        names = list(verify.CHECKERS)
        if args.min is not None or args.max is not None:
            raise UsageError("--min/--max apply to a single identity, not 'all'")
    elif args.identity in verify.CHECKERS:
        names = [args.identity]
    else:
        raise UsageError(
            f"unknown identity {args.identity!r}; choose from all, "
            + ", ".join(verify.CHECKERS)
        )
    reports = []
    try:
        for name in names:
            reports.append(_run_checker(name, args))
    except (ValueError, EnumerationCapError) as exc:
        raise UsageError(str(exc)) from exc
    with _open_output(args.output) as out:
        _emit_reports(reports, args.format, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


def cmd_quadcheck(args) -> int:
    if not 0 <= args.max_n <= 12:
        raise UsageError(f"max_n must lie in 0..12, got {args.max_n}")
    if not args.tol > 0:
        raise UsageError(f"tol must be positive, got {args.tol}")
    report = verify.verify_quadrature(args.max_n, args.tol)
    with _open_output(args.output) as out:
        _emit_reports([report], args.format, out)
    return EXIT_OK if report.passed else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derangesum",
        description="Exact derangement numbers and certified checks of the "
        "sum rule sum_{n<=p} n D(n) = floor((p+1)!/e).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, formats, default):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("compute", help="print one exact value")
    p.add_argument("kind", choices=list(COMPUTE_KINDS))
    p.add_argument("n", type=int, help="n for derangement/floor/a, p for sum")
    p.add_argument(
        "--method",
        help="derangement: table|sum|pair|signed|floor|nearest; "
        "sum: table|floor|parity|brute; a: recurrence|closed",
    )
    add_output(p, ["plain", "json-lines"], "plain")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="n, D(n), S_n, A_{n+1}, floor((n+1)!/e) for n <= max_n")
    p.add_argument("max_n", type=int)
    add_output(p, ["plain", "csv", "json-lines"], "plain")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run identity checkers")
    p.add_argument("identity", help="all, " + ", ".join(verify.CHECKERS))
    profile = p.add_mutually_exclusive_group()
    profile.add_argument("--quick", action="store_true", help="small ranges for CI")
    profile.add_argument("--full", action="store_true", help="acceptance ranges (default)")
    p.add_argument("--min", type=int, help="lower end of the range")
    p.add_argument("--max", "--max-p", "--max-n", dest="max", type=int,
                   help="upper end of the range")
    p.add_argument("--seed", type=int, default=0, help="seed for the random hermite cases")
    add_output(p, ["text", "json-lines"], "text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("quadcheck", help="float quadrature against exact integrals")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-8)
    add_output(p, ["text", "json-lines"], "text")
    p.set_defaults(func=cmd_quadcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
