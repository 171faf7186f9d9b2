"""Command-line driver: ``rsverify verify <suite> [options]``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import _accel
from .padic import is_odd_prime
from .report import render_json, render_text
from .suites import DEFAULT_PRIMES, SUITES, SuiteConfig, run


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_odd_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not an odd prime")
    return p


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"{n} must be >= 0")
    return n


def _positive_int(text: str) -> int:
    n = _nonneg_int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"{n} must be >= 1")
    return n


def _positive_float(text: str) -> float:
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not t > 0:
        raise argparse.ArgumentTypeError(f"{t} must be > 0")
    return t


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsverify",
        description="Verify the unramified SL2 x GL2 Rankin-Selberg identity and its ingredients.")
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=[*SUITES, "all"])
    verify.add_argument("--order", type=_nonneg_int, default=40,
                        help="truncation order N of the series checks (default 40)")
    verify.add_argument("--prime", type=_prime, action="append", dest="primes",
                        help="odd prime to test (repeatable; default 3, 5, 7, 11)")
    verify.add_argument("--mmax", type=_positive_int, default=5,
                        help="largest m for the unit integrals (default 5)")
    verify.add_argument("--tolerance", type=_positive_float, default=1e-9,
                        help="numeric tolerance (default 1e-9)")
    verify.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    verify.add_argument("--report", choices=("text", "json"), default="text")
    verify.add_argument("--out", type=Path, help="write the report here instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    primes = tuple(dict.fromkeys(args.primes)) if args.primes else DEFAULT_PRIMES
    cfg = SuiteConfig(order=args.order, primes=primes, mmax=args.mmax,
                      tolerance=args.tolerance, seed=args.seed)
    reports = run(args.suite, cfg)
    text = render_json(reports) if args.report == "json" else render_text(reports)
    ok = all(r.passed for r in reports)
    if args.out is not None:
        args.out.write_text(text + "\n", encoding="utf-8")
        n_pass = sum(r.passed for r in reports)
        print(f"{n_pass}/{len(reports)} checks passed (backend: {_accel.backend_name()}); "
              f"report written to {args.out}")
    else:
        sys.stdout.write(text + "\n")
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
