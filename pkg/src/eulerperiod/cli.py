"""Command-line front end.

Exit codes: 0 success, 1 mismatch or violation found, 2 inconclusive, 3 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from importlib import resources

from . import arnold, conjectures, ftransform, periodicity, seidel
from .core_arith import DomainError

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_schema(command: str) -> dict:
    """JSON schema of a command's payload (``"record"`` for the envelope)."""
    text = resources.files(__package__).joinpath("schemas", f"{command}.schema.json").read_text()
    return json.loads(text)


def _seed(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}: expected comma-separated integers")
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"seed terms must be nonnegative: {text!r}")
    return vals


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _inf(v):
    return "inf" if v.is_top else v.value


def _null(v):
    return None if v.is_top else v.value


# Each command returns (payload, csv_rows, exit_code).


def cmd_euler(args):
    seq = seidel.euler_sequence(args.count, args.mod)
    payload = {"modulus": args.mod, "terms": [str(x) for x in seq.terms]}
    return payload, [seq.terms], EXIT_OK


def cmd_entringer(args):
    rows = seidel.triangle_rows(args.rows, args.mod)
    payload = {"modulus": args.mod, "rows": [[str(x) for x in r.entries] for r in rows]}
    return payload, [r.entries for r in rows], EXIT_OK


def cmd_valuations(args):
    rows = arnold.valuation_rows(args.rows, args.cap)
    payload = {"cap": args.cap, "rows": [[_null(v) for v in r] for r in rows]}
    return payload, [[_inf(v) for v in r] for r in rows], EXIT_OK


def cmd_period(args):
    prof = periodicity.profile_euler(args.mod, args.window, args.margin)
    payload = prof.as_dict()
    payload["period_witnesses"] = {str(k): v for k, v in sorted(prof.period_witnesses.items())}
    payload["preperiod_witness"] = prof.preperiod_witness
    row = [args.mod, prof.s, prof.d, prof.window, prof.margin, prof.status]
    return payload, [row], EXIT_OK if prof.confirmed else EXIT_INCONCLUSIVE


def cmd_arnold(args):
    table = arnold.arnold_sequence(
        args.kmax, rows=args.rows, guard=args.guard, cap=args.cap, max_rows=args.max_rows
    )
    payload = {
        "k_max": table.k_max,
        "cap": table.cap,
        "rows_used": table.rows_used,
        "guard": table.guard,
        "status": table.status,
        "stable": table.stable,
        "guarded": table.guarded,
        "u": list(table.u) if table.u is not None else None,
        "candidate_u": list(table.candidate_u),
        "minima": [_null(v) for v in table.minima],
        "anomalies": [list(a) for a in table.anomalies],
    }
    code = EXIT_OK if table.confirmed else EXIT_INCONCLUSIVE
    return payload, [table.candidate_u], code


def cmd_ftransform(args):
    terms = ftransform.f_transform(args.seed, args.count)
    return {"seed": args.seed, "terms": terms}, [terms], EXIT_OK


def cmd_verify(args):
    for name in ("odd_max", "pow2_max", "composite_max", "kmax", "slack"):
        if getattr(args, name) < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
    scope = conjectures.Scope(
        odd_prime_power_max=args.odd_max or None,
        pow2_max_exp=args.pow2_max or None,
        composite_max=args.composite_max or None,
        k_max=args.kmax or None,
        margin=args.margin,
        slack=args.slack,
    )
    if not any((scope.odd_prime_power_max, scope.pow2_max_exp, scope.composite_max, scope.k_max)):
        raise UsageError("verify: empty scope")
    report = conjectures.verify_suite(scope, workers=args.workers)
    rows = []
    for r in report.rows:
        p, pr = r.profile, r.prediction
        rows.append([
            r.q, r.kind,
            p.s if p else "", p.d if p else "",
            pr.s_pred if pr and pr.s_pred is not None else "",
            pr.d_pred if pr and pr.d_pred is not None else "",
            r.verdict.value,
        ])
    for a in report.arnold_rows:
        rows.append([a.k, "arnold", a.u_k if a.u_k is not None else "", "", a.f_k, "", a.verdict.value])
    return report.as_dict(), rows, report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eulerperiod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, func, default_format, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func, default_format=default_format)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--format", choices=("csv", "json"))
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
        p.add_argument("--out", metavar="PATH")
        return p

    p = add("euler", cmd_euler, "csv", "Euler up/down numbers, exact or mod q")
    p.add_argument("--mod", "-q", type=_positive)
    p.add_argument("--count", type=_positive, default=13)

    p = add("entringer", cmd_entringer, "csv", "rows of the Entringer triangle")
    p.add_argument("--mod", "-q", type=_positive)
    p.add_argument("--rows", type=_positive, default=5)

    p = add("valuations", cmd_valuations, "csv", "2-adic valuations of triangle rows")
    p.add_argument("--rows", type=_positive, default=5)
    p.add_argument("--cap", type=_positive, default=64)

    p = add("period", cmd_period, "json", "preperiod and period of E_n mod q")
    p.add_argument("--mod", "-q", type=_positive, required=True)
    p.add_argument("--window", type=_positive, default=1000)
    p.add_argument("--margin", type=_positive, default=periodicity.DEFAULT_MARGIN)

    p = add("arnold", cmd_arnold, "csv", "Arnold's sequence u_k")
    p.add_argument("--kmax", type=_positive, default=18)
    p.add_argument("--rows", type=_positive, default=arnold.DEFAULT_START_ROWS)
    p.add_argument("--guard", type=_positive, default=arnold.DEFAULT_GUARD)
    p.add_argument("--cap", type=_positive)
    p.add_argument("--max-rows", type=_positive, default=arnold.DEFAULT_MAX_ROWS)

    p = add("ftransform", cmd_ftransform, "csv", "f-transform of a seed")
    p.add_argument("--seed", type=_seed, default=list(conjectures.ARNOLD_SEED))
    p.add_argument("--count", type=_positive, default=16)

    desk = conjectures.Scope.desk()
    p = add("verify", cmd_verify, "json", "check predictions against computed profiles")
    p.add_argument("--odd-max", type=int, default=desk.odd_prime_power_max,
                   help="odd prime powers up to this bound (0 disables)")
    p.add_argument("--pow2-max", type=int, default=desk.pow2_max_exp,
                   help="powers of two 2^1..2^K (0 disables)")
    p.add_argument("--composite-max", type=int, default=desk.composite_max,
                   help="composite non-prime-powers up to this bound (0 disables)")
    p.add_argument("--kmax", type=int, default=desk.k_max,
                   help="compare u_1..u_K with the f-transform (0 disables)")
    p.add_argument("--margin", type=_positive, default=periodicity.DEFAULT_MARGIN)
    p.add_argument("--slack", type=int, default=desk.slack)
    p.add_argument("--workers", type=_positive)
    return parser


def _parameters(args) -> dict:
    skip = {"func", "default_format", "format", "out", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or args.default_format
    start = time.perf_counter()
    try:
        payload, csv_rows, code = args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"eulerperiod {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = (time.perf_counter() - start) * 1000.0

    if fmt == "json":
        record = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "parameters": _parameters(args),
            "payload": payload,
            "timing": {"elapsed_ms": round(elapsed, 3)},
        }
        text = json.dumps(record, indent=2) + "\n"
    else:
        text = _csv(csv_rows)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
