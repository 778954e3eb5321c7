from __future__ import annotations
import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Sequence

from .codec import dumps
from .conditions import SCAN_FILTERS, classify_d
from .config import load_config
from .logging_setup import setup_logging
from .pell import Constraint, pell_solve, solve_affine
from .report import FORMATS, ReportRecord, build_record, render
from .suites import SUITES, run_suite

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

MULTIPLIER_LIST_MAX = 20

class UsageError(ValueError):
    pass

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None

def _constraints(text: str) -> list[Constraint]:
    try:
        return [Constraint(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        names = ", ".join(c.value for c in Constraint)
        raise argparse.ArgumentTypeError(f"constraints must be among {names}, got {text!r}") from None

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="k3tau", description="Exact checks around the involution τ on degree-d K3 surfaces.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--workers", type=int, default=None, help="worker processes (overrides K3TAU_WORKERS)")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="report everything known about one degree")
    check.add_argument("d", type=int)
    check.add_argument("--n", type=_int_list, default=[2], help="comma separated Hilbert scheme sizes")
    check.add_argument("--format", choices=FORMATS, default="table")
    check.add_argument("--certify", metavar="DIR", default=None, help="write the τ certificate as JSON")

    scan = sub.add_parser("scan", help="classify every even degree in a range")
    scan.add_argument("d_from", type=int)
    scan.add_argument("d_to", type=int)
    scan.add_argument("--n", type=_int_list, default=[], help="comma separated Hilbert scheme sizes")
    scan.add_argument("--only", choices=SCAN_FILTERS, default="all")
    scan.add_argument("--format", choices=FORMATS, default="table")
    scan.add_argument("--certify", metavar="DIR", default=None)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES + ("all",))
    verify.add_argument("--d-max", type=int, default=None)
    verify.add_argument("--d-list", type=_int_list, default=None)

    pell = sub.add_parser("pell", help="solve x² − Dy² = N, or aP² − bQ² = c with --affine")
    pell.add_argument("D", type=int, nargs="?")
    pell.add_argument("N", type=int, nargs="?")
    pell.add_argument("--affine", type=int, nargs=3, metavar=("A", "B", "C"), default=None)
    pell.add_argument("--constraint", type=_constraints, default=[])
    pell.add_argument("--allow-square", action="store_true")
    return parser

def cmd_check(d: int, n_list: Sequence[int], fmt: str, certify_dir: str | None = None) -> ReportRecord:
    if d <= 0 or d % 2:
        raise UsageError(f"d must be even, got {d}")
    record = build_record(d, n_list, certify_dir)
    print(render([record], fmt, n_list))
    return record

def _classify(d: int, n_list: Sequence[int], certify_dir: str | None, only: str) -> ReportRecord | None:
    # certificates are written only for degrees that pass the filter
    cls = classify_d(d)
    if not cls.matches(only):
        return None
    return build_record(d, n_list, certify_dir, cls)

def cmd_scan(
    d_from: int,
    d_to: int,
    n_list: Sequence[int],
    only: str,
    fmt: str,
    workers: int = 1,
    certify_dir: str | None = None,
) -> list[ReportRecord]:
    start = d_from + (d_from % 2)
    degrees = [d for d in range(max(start, 2), d_to + 1, 2)]
    log.info("scanning %d degrees in [%d, %d] with %d worker(s)", len(degrees), d_from, d_to, workers)
    classify = partial(_classify, n_list=tuple(n_list), certify_dir=certify_dir, only=only)
    if workers > 1 and len(degrees) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(classify, degrees, chunksize=max(1, len(degrees) // (4 * workers))))
    else:
        results = [classify(d) for d in degrees]
    records = [r for r in results if r is not None]
    out = render(records, fmt, n_list)
    if out:
        print(out)
    return records

def cmd_verify(suite: str, d_max: int | None, d_list: Sequence[int] | None, workers: int = 1) -> int:
    results = run_suite(suite, d_max, d_list, workers)
    for r in results:
        status = "pass" if r.ok else "FAIL"
        line = f"{r.name}: {status} ({r.checked} checked, {len(r.failures)} failures)"
        if r.multipliers and len(r.multipliers) <= MULTIPLIER_LIST_MAX:
            line += ", multipliers " + ",".join(str(m) for m in r.multipliers)
        print(line)
        for x in r.details:
            if "kd_orders" in x:
                print(
                    f"  d={x['d']}: Disc K_d {x['kd_orders']}, K_d^⊥ rank {x['complement_rank']} "
                    f"with Disc {x['complement_orders']}, multiplier {x['multiplier']}"
                )
        for f in r.failures:
            print(f"  {f}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY_FAILED

def cmd_pell(args: argparse.Namespace) -> None:
    if args.affine is not None:
        a, b, c = args.affine
        w = solve_affine(a, b, c, args.constraint, allow_square=args.allow_square)
        payload = {"solvable": w.solvable, "P": w.p, "Q": w.q, "method": w.method}
    else:
        if args.D is None or args.N is None:
            raise UsageError("pell needs D and N, or --affine a b c")
        payload = pell_solve(args.D, args.N).to_dict()
    print(dumps(payload))

def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        cfg = load_config()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging("DEBUG" if args.verbose else cfg.log_level)
    workers = args.workers if args.workers is not None else cfg.workers

    try:
        if workers < 1:
            raise UsageError(f"--workers must be at least 1, got {workers}")
        if args.command == "check":
            cmd_check(args.d, args.n, args.format, args.certify)
        elif args.command == "scan":
            for n in args.n:
                if n < 2:
                    raise UsageError(f"n must be at least 2, got {n}")
            cmd_scan(args.d_from, args.d_to, args.n, args.only, args.format, workers, args.certify)
        elif args.command == "verify":
            return cmd_verify(args.suite, args.d_max, args.d_list, workers)
        elif args.command == "pell":
            cmd_pell(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK

def main() -> None:
    sys.exit(run())

if __name__ == "__main__":
    main()
