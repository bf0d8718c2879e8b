"""Command-line frontend: expansion, duality grids, the space scanner, the
verification harness, and the acceptance selftest.

Output is deterministic byte-for-byte for a fixed command line: timings and
other run metadata go to stderr, never stdout. JSON payloads carry
{"schema": 1} and serialize big integers as decimal strings. Exit codes:
0 success / all verified, 1 a verification or selftest failure, 2 usage,
3 insufficient precision.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import acceptance, cmforms, families, verify
from .eta import expand, parse_eta_quotient
from .qseries import PrecisionError, QSeries
from .spaces import CM_PAIRS, scan

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

CLAIMS = {
    "thm1a": lambda a: verify.verify_thm1a(
        a.space, _req(a, "p"), _req(a, "m"), a.allow_p2, a.max_precision),
    "thm1b": lambda a: verify.verify_thm1b(
        a.space, _req(a, "p"), _req(a, "m"), a.window, a.allow_p2, a.max_precision),
    "cong1": lambda a: verify.verify_cong1(
        a.space, _req(a, "p"), _req(a, "m"), a.max_precision),
    "cong2": lambda a: verify.verify_cong2(
        a.space, _req(a, "pmax"), a.allow_p2, a.max_precision),
    "hecke_theta": lambda a: verify.verify_hecke_theta(
        a.space, _req(a, "p"), a.window, a.max_precision),
    "prop1c": lambda a: verify.verify_prop1c(
        a.space, _req(a, "p"), _req(a, "n"), a.window, a.max_precision),
    "even_power_zero": lambda a: verify.verify_even_power_zero(
        a.space, _req(a, "p"), _req(a, "mmax"), a.max_precision),
    "telescoping": lambda a: verify.verify_telescoping(
        a.space, _req(a, "p"), _req(a, "m"), a.window, a.max_precision),
    "duality": lambda a: verify.verify_duality(
        a.space, a.max_m, a.max_n, a.max_precision),
    "constant_term": lambda a: verify.verify_constant_term(
        a.space, _samples(a), a.max_precision),
}


class UsageError(Exception):
    pass


def _req(args, name):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"claim {args.claim!r} requires --{name.replace('_', '-')}")
    return v


def _samples(args):
    if not args.samples:
        raise UsageError("constant_term requires --samples like '1,2;3,4'")
    out = []
    for chunk in args.samples.split(";"):
        m, _, n = chunk.partition(",")
        out.append((int(m), int(n)))
    return out


def _space(text: str) -> tuple[int, int]:
    k, _, N = text.partition(",")
    try:
        pair = (int(k), int(N))
    except ValueError:
        raise argparse.ArgumentTypeError(f"space must look like 'k,N', got {text!r}")
    return pair


def _check_space(pair) -> tuple[int, int]:
    if pair not in CM_PAIRS:
        raise UsageError(
            f"space {pair[0]},{pair[1]} is not supported; choose from "
            + " ".join(f"{k},{N}" for k, N in CM_PAIRS)
        )
    return pair


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _series_doc(series: QSeries) -> dict:
    return series.to_json()


def cmd_expand(args) -> int:
    if args.eta:
        if args.form:
            raise UsageError("--eta and --form are mutually exclusive")
        eq = parse_eta_quotient(args.eta)
        series = expand(eq, args.prec)
        label = args.eta
        space = None
    else:
        if not args.space or not args.form:
            raise UsageError("expand needs --space and --form (or --eta)")
        space = _check_space(args.space)
        label = args.form
        series = _form_series(space, args.form, args.prec)
    if args.format == "json":
        doc = {"schema": 1, "form": label, "series": _series_doc(series)}
        if space is not None:
            doc["space"] = list(space)
        _emit_json(doc)
    else:
        print(series)
    return EXIT_OK


def _form_series(space, form: str, prec: int) -> QSeries:
    if form == "g":
        return cmforms.g_expansion(space, prec).truncated(prec)
    if form in ("phi2", "phi3", "L"):
        f = getattr(families.base_forms(space, prec), form)
        if f is None:
            raise UsageError(f"space {space} has no base form {form}")
        return f.truncated(prec)
    kind, _, idx = form.partition(":")
    if not idx:
        raise UsageError(f"unrecognized form {form!r}")
    try:
        index = int(idx)
    except ValueError:
        raise UsageError(f"unrecognized form index in {form!r}")
    if kind == "phi":
        return families.build_phi(space, index, prec).series.truncated(prec)
    if kind == "F":
        return families.build_F(space, index, prec).series.truncated(prec)
    raise UsageError(f"unrecognized form {form!r}")


def cmd_duality(args) -> int:
    space = _check_space(args.space)
    report = verify.verify_duality(space, args.max_m, args.max_n)
    if args.format == "json":
        _emit_json({"schema": 1, "report": report.to_json()})
    else:
        print(f"duality {space[0]},{space[1]} m<={args.max_m} n<={args.max_n}: "
              f"{report.status} ({report.detail})")
        for w in report.witnesses:
            print(f"  mismatch m={w[0]} n={w[1]}: C={w[2]} A={w[3]}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_scan(args) -> int:
    rows = scan(args.nmax, args.kmax)
    if args.format == "json":
        _emit_json({
            "schema": 1,
            "rows": [
                {"N": row.N, "k": row.k, "dim": row.dim,
                 "cm": row.cm if isinstance(row.cm, bool) else None}
                for row in rows
            ],
        })
    else:
        print("N     k   dim  cm")
        for row in rows:
            cm = "yes" if row.cm is True else "?"
            print(f"{row.N:<5} {row.k:<3} {row.dim:<4} {cm}")
    return EXIT_OK


def cmd_verify(args) -> int:
    args.space = _check_space(args.space)
    report = CLAIMS[args.claim](args)
    if args.format == "json":
        _emit_json({"schema": 1, "report": report.to_json()})
    else:
        print(f"{report.claim} {report.space[0]},{report.space[1]}: {report.status}")
        print(f"  {report.detail}")
    if report.status == verify.VERIFIED:
        return EXIT_OK
    if report.status == verify.INSUFFICIENT:
        return EXIT_PRECISION
    return EXIT_FAIL


def cmd_selftest(args) -> int:
    picked = None
    if args.only:
        picked = {int(x) for x in args.only.split(",")}
    failures = 0
    for number, name, fn in acceptance.CRITERIA:
        if picked is not None and number not in picked:
            continue
        t0 = time.perf_counter()
        ok, detail = fn()
        dt = time.perf_counter() - t0
        limit = acceptance.LIMITS.get(number)
        if limit is not None and dt >= limit:
            ok = False
            detail += f"; runtime {dt:.1f}s exceeded the {limit:.0f}s budget"
        status = "PASS" if ok else "FAIL"
        print(f"{status} {number:2d} {name}")
        print(f"  [{dt:6.1f}s] {detail}", file=sys.stderr)
        if not ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspdual",
        description="Exact q-expansion workbench for five one-dimensional "
                    "CM cusp form spaces and their dual families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print a q-expansion")
    p.add_argument("--space", type=_space)
    p.add_argument("--form", help="g | phi:n | F:m | phi2 | phi3 | L")
    p.add_argument("--eta", help="expand an eta quotient like 'eta(3)^2*eta(9)^2'")
    p.add_argument("--prec", type=int, default=15)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("duality", help="check C_m(n) = A_n(m) on a grid")
    p.add_argument("--space", type=_space, required=True)
    p.add_argument("--max-n", type=int, default=15)
    p.add_argument("--max-m", type=int, default=14)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("scan", help="list one-dimensional cusp form spaces")
    p.add_argument("--nmax", type=int, default=242)
    p.add_argument("--kmax", type=int, default=50)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run one verification claim")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--space", type=_space, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--pmax", type=int)
    p.add_argument("--mmax", type=int)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--max-n", type=int, default=40)
    p.add_argument("--max-m", type=int, default=40)
    p.add_argument("--samples", help="semicolon-separated m,n pairs")
    p.add_argument("--allow-p2", action="store_true")
    p.add_argument("--max-precision", type=int)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        # subclass of ValueError, so it must be caught first
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
