"""Command-line front end.

Exit codes: 0 affirmative, 1 negative result (not represented, not
universal, check failed), 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
from typing import Any, Iterable, Sequence

from polysum import checks
from polysum._pool import JOBS_ENV, default_jobs
from polysum.nonrep import family, verify_not_represented
from polysum.polygonal import check_coeffs, coeff_vector, pm_value, represents
from polysum.solver import construct
from polysum.universality import (
    classify,
    classify_by_criterion,
    classify_closed_form,
    classify_small_m,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    # decimal only: reject "0x10", "1_000", " 3"
    s = text[1:] if text[:1] == "-" else text
    if not s.isdigit() or not s.isascii():
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    return int(text)


def _positive(text: str) -> int:
    v = _int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _int_list(text: str) -> tuple[int, ...]:
    if not text or " " in text:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers without spaces: {text!r}")
    return tuple(_int(p) for p in text.split(","))


def _coeffs(text: str) -> tuple[int, ...]:
    vals = _int_list(text)
    try:
        return check_coeffs(vals)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _emit(args: argparse.Namespace, payload: Any) -> None:
    if args.format == "json":
        print(json.dumps(payload))
        return
    if isinstance(payload, dict):
        width = max((len(k) for k in payload), default=0)
        for k, v in payload.items():
            print(f"{k:<{width}}  {json.dumps(v) if v is None or isinstance(v, (list, dict, bool)) else v}")
    else:
        print(payload)


class _Report:
    """Line-delimited JSON report, flushed after every record."""

    def __init__(self, path: str | None, append: bool = False):
        self.fh = open(path, "a" if append else "w", encoding="utf-8") if path else None

    def write(self, rec: dict) -> None:
        if self.fh:
            self.fh.write(json.dumps(rec) + "\n")
            self.fh.flush()

    def close(self) -> None:
        if self.fh:
            self.fh.close()


def _read_report(path: str) -> list[dict]:
    """Complete records of an existing report; a torn last line is dropped."""
    if not os.path.exists(path):
        return []
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] != "":
        lines = lines[:-1]
    recs = []
    for line in lines:
        if not line:
            continue
        try:
            recs.append(json.loads(line))
        except json.JSONDecodeError:
            break
    valid = "".join(json.dumps(r) + "\n" for r in recs)
    if valid != text:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(valid)
    return recs


# -- subcommands ---------------------------------------------------------------


def cmd_value(args) -> int:
    # a bare integer is valid JSON as well as text
    print(pm_value(args.m, args.x))
    return EXIT_OK


def cmd_represent(args) -> int:
    w = represents(args.m, args.coeffs, args.n)
    rec = checks.witness_record(args.m, args.coeffs, args.n, w)
    report = _Report(args.report)
    report.write(rec)
    report.close()
    _emit(args, rec)
    return EXIT_OK if w is not None else EXIT_NEGATIVE


def _resolve_coeffs(args) -> tuple[int, ...]:
    if args.coeffs is not None:
        if args.alpha is not None or args.beta is not None:
            raise UsageError("give either --coeffs or --alpha/--beta, not both")
        return args.coeffs
    if args.alpha is None or args.beta is None:
        raise UsageError("need --coeffs or both --alpha and --beta")
    return coeff_vector(args.alpha, args.beta)


def cmd_exceptional(args) -> int:
    a = _resolve_coeffs(args)
    if args.bound < 0:
        raise UsageError("--bound must be non-negative")
    start = 0
    missed: list[int] = []
    if args.resume:
        if not args.report:
            raise UsageError("--resume needs --report")
        done = _read_report(args.report)
        for rec in done:
            if rec.get("m") != args.m or tuple(rec.get("coeffs", ())) != a:
                raise UsageError("report belongs to a different scan")
            if rec["witness"] is None:
                missed.append(rec["n"])
        start = done[-1]["n"] + 1 if done else 0
    report = _Report(args.report, append=args.resume)
    try:
        for rec in checks.scan_records(args.m, a, start, args.bound, args.jobs):
            report.write(rec)
            if rec["witness"] is None:
                missed.append(rec["n"])
    finally:
        report.close()
    _emit(args, {"m": args.m, "coeffs": list(a), "bound": args.bound, "exceptional": missed})
    return EXIT_OK if not missed else EXIT_NEGATIVE


def cmd_universal(args) -> int:
    method = {
        "auto": classify,
        "closed-form": classify_closed_form,
        "criterion": classify_by_criterion,
        "gamma": classify_small_m,
    }[args.method]
    v = method(args.m, args.alpha, args.beta)
    _emit(args, v.as_dict())
    return EXIT_OK if v.universal else EXIT_NEGATIVE


def cmd_solve(args) -> int:
    c = construct(args.m, args.case, args.n)
    rec = c.as_dict()
    report = _Report(args.report)
    report.write(rec)
    report.close()
    _emit(args, rec)
    return EXIT_OK


def cmd_nonrep(args) -> int:
    fam = family(args.m, args.case, args.seed)
    rep = verify_not_represented(fam, args.t, budget=args.budget, jobs=args.jobs)
    out = rep.as_dict()
    out["order"] = fam.order
    report = _Report(args.report)
    for e in out["entries"]:
        report.write({"m": fam.m, "coeffs": list(fam.case.a), **e})
    report.close()
    _emit(args, out)
    return EXIT_OK if rep.complete else EXIT_NEGATIVE


def _run_records(records: Iterable[dict], report: _Report) -> list[dict]:
    out = []
    for rec in records:
        report.write(rec)
        out.append(rec)
    return out


def cmd_verify(args) -> int:
    report = _Report(args.report)
    try:
        if args.suite == "ternary":
            res = checks.check_ternary(args.bound or 2000, args.m_list or (5, 7, 9, 19), args.jobs)
        elif args.suite == "binary-lattice":
            res = checks.check_binary_lattice(args.bound or 60, args.jobs)
        elif args.suite == "residue-cover":
            res = checks.check_residue_cover(
                args.m_list or (19, 20, 21, 22, 23), args.max_m, args.reduction_factor, args.jobs
            )
        elif args.suite == "constructive":
            plan = checks.constructive_plan(args.m_min or 5, args.m_max or 12, args.samples, args.width, args.seed)
            recs = _run_records(checks.constructive_records(plan, args.cross_check, args.jobs), report)
            res = checks.summarize_constructive(recs)
        else:
            res = checks.check_consistency(args.m_min or 10, args.m_max or 30, args.alpha_max, args.beta_max, args.jobs)
        if args.suite != "constructive":
            report.write(res)
    finally:
        report.close()
    _emit(args, res)
    return EXIT_OK if res["passed"] else EXIT_NEGATIVE


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=_positive, default=None, help=f"worker processes (default: ${JOBS_ENV} or CPU count)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--report", default=None, help="line-delimited JSON report file")

    p = argparse.ArgumentParser(prog="polysum", description="Weighted sums of generalized polygonal numbers.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("value", parents=[common], help="print P_m(x)")
    s.add_argument("--m", type=_int, required=True)
    s.add_argument("--x", type=_int, required=True)
    s.set_defaults(func=cmd_value)

    s = sub.add_parser("represent", parents=[common], help="search for a witness")
    s.add_argument("--m", type=_int, required=True)
    s.add_argument("--coeffs", type=_coeffs, required=True)
    s.add_argument("--n", type=_int, required=True)
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("exceptional", parents=[common], help="list non-represented integers up to a bound")
    s.add_argument("--m", type=_int, required=True)
    s.add_argument("--alpha", type=_int)
    s.add_argument("--beta", type=_int)
    s.add_argument("--coeffs", type=_coeffs)
    s.add_argument("--bound", type=_int, required=True)
    s.add_argument("--resume", action="store_true", help="continue after the last complete report line")
    s.set_defaults(func=cmd_exceptional)

    s = sub.add_parser("universal", parents=[common], help="decide universality of (1^alpha, 2^beta)")
    s.add_argument("--m", type=_int, required=True)
    s.add_argument("--alpha", type=_int, required=True)
    s.add_argument("--beta", type=_int, required=True)
    s.add_argument("--method", choices=("auto", "closed-form", "criterion", "gamma"), default="auto")
    s.set_defaults(func=cmd_universal)

    s = sub.add_parser("solve", parents=[common], help="constructive witness for large N")
    s.add_argument("--m", type=_int, required=True)
    s.add_argument("--case", type=_coeffs, required=True)
    s.add_argument("--n", type=_int, required=True)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("nonrep", parents=[common], help="non-represented family for m = 0 (mod 4)")
    s.add_argument("--m", type=_int, required=True)
    s.add_argument("--case", type=_coeffs, required=True)
    s.add_argument("--t", type=_int, default=1, help="largest family index to check")
    s.add_argument("--seed", type=_positive, default=None)
    s.add_argument("--budget", type=_positive, default=10**6, help="largest N to search exhaustively")
    s.set_defaults(func=cmd_nonrep)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=("ternary", "binary-lattice", "residue-cover", "constructive", "consistency"))
    s.add_argument("--bound", type=_positive)
    s.add_argument("--m-list", type=_int_list)
    s.add_argument("--m-min", type=_int)
    s.add_argument("--m-max", type=_int)
    s.add_argument("--max-m", type=_int, default=101)
    s.add_argument("--reduction-factor", type=_int, default=0)
    s.add_argument("--alpha-max", type=_int, default=40)
    s.add_argument("--beta-max", type=_int, default=20)
    s.add_argument("--samples", type=_positive, default=200)
    s.add_argument("--width", type=_int, default=10**5)
    s.add_argument("--seed", type=_int, default=0)
    s.add_argument("--cross-check", action="store_true", help="also confirm each N by exhaustive search")
    s.set_defaults(func=cmd_verify)
    return p


def _sigterm(signum, frame):
    raise KeyboardInterrupt


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.jobs is None:
            args.jobs = default_jobs()
        signal.signal(signal.SIGTERM, _sigterm)
        return args.func(args)
    except (UsageError, ValueError, TypeError) as e:
        print(f"polysum: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("polysum: interrupted; partial report kept", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
