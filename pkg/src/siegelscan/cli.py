"""Command-line interface: ``siegelscan <command> ...``.

Exit codes: 0 success, 1 domain or verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .arith import PrimeContext, build_power_sequence
from .bounds import index_record, siegel_bounds, s_of_q
from .errors import (
    CheckpointError,
    DomainError,
    IntegralityError,
    InvalidModulusError,
    VerificationError,
)
from .fftcheck import EPS_BINARY64, roundtrip_diagnose
from .golden import load_fixtures, verify_golden
from .lfun import METHODS, l1
from .plot import PLOT_COLUMNS, PlotSpec, write_plot
from .scan import ScanConfig, extrema, joshi_census, read_csv, run_scan

WORKERS_ENV = "SIEGELSCAN_WORKERS"


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _parse_eps(text: str) -> float:
    text = text.strip()
    if text.startswith("2^"):
        return 2.0 ** float(text[2:])
    return float(text)


def cmd_single(args) -> int:
    q = args.q
    methods = METHODS if args.all_methods else (args.method,)
    ctx = PrimeContext.for_prime(q)
    seq = build_power_sequence(ctx) if any(m != "direct" for m in methods) else None
    values = {m: l1(q, m, ctx, seq) for m in methods}
    L = values[methods[0] if not args.all_methods else "alternating"]
    print(f"q            = {q}")
    print(f"parity       = {ctx.parity}  (q mod 4 = {q % 4})")
    print(f"primitive g  = {ctx.g}")
    for m, v in values.items():
        print(f"L[{m:<11}] = {v.value!r}   (err bound {v.err_bound:.3e})")
    b = siegel_bounds(q, L, s_of_q(q))
    print(f"S(q)         = {b.S!r}")
    print(f"g(q)         = {b.gq!r}")
    print(f"c1           = {b.c1!r}")
    print(f"c2           = {b.c2!r}")
    print(f"c3           = {b.c3!r}")
    print(f"c4           = {b.c4!r}")
    print(f"beta <         {b.beta_upper!r}")
    ix = index_record(q, L)
    if ix.uli is not None:
        print(f"ULI          = {ix.uli!r}")
        print(f"LLI          = {ix.lli!r}")
    print(f"joshi1       = {int(ix.joshi1)}")
    print(f"joshi2       = {int(ix.joshi2)}")
    if ix.h is not None:
        print(f"h(-q)        = {ix.h}   (residual {ix.h_residual:.3e})")
    return 0


def cmd_scan(args) -> int:
    config = ScanConfig(
        qmin=args.qmin, qmax=args.qmax, workers=args.workers, method=args.method,
        checkpoint_path=args.checkpoint, emit_spectrum=args.spectrum_dir is not None,
        spectrum_dir=args.spectrum_dir, eps_model=args.eps, block_size=args.block_size,
    )
    if args.spectrum_dir is not None:
        args.spectrum_dir.mkdir(parents=True, exist_ok=True)
    try:
        n = run_scan(config, args.out, resume=args.resume)
    except KeyboardInterrupt:
        print("interrupted; completed blocks are in the checkpoint, rerun with --resume",
              file=sys.stderr)
        return 130
    if args.out is not None:
        print(f"wrote {n} rows", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    fixtures = None
    if args.fixtures is not None:
        fixtures = load_fixtures(args.fixtures.read_text(encoding="utf-8"))
    report = verify_golden(fixtures, method=args.method, tol=args.tol)
    print(report.as_text())
    return 0 if report.passed else 1


def cmd_extrema(args) -> int:
    rows = read_csv(args.csv)
    print(extrema(rows).as_text())
    return 0


def cmd_census(args) -> int:
    rows = read_csv(args.csv)
    c = joshi_census(rows, args.first)
    print(f"primes scanned : {c.total}")
    print(f"joshi1 holds   : {c.count1} ({100 * c.count1 / c.total:.2f}%)")
    print(f"joshi2 holds   : {c.count2} ({100 * c.count2 / c.total:.2f}%)")
    print("first joshi1   : " + ", ".join(map(str, c.first1)))
    print("first joshi2   : " + ", ".join(map(str, c.first2)))
    return 0


def cmd_fftcheck(args) -> int:
    ctx = PrimeContext.for_prime(args.q)
    rep = roundtrip_diagnose(ctx.q, build_power_sequence(ctx), eps=args.eps, backend=args.backend)
    print(rep.as_text())
    return 0 if rep.within_model else 1


def _parse_ref(text: str) -> tuple[float, str]:
    value, _, label = text.partition(":")
    return float(value), label or value


def cmd_plot(args) -> int:
    rows = read_csv(args.csv)
    spec = PlotSpec(
        kind=args.kind, column=args.column, qmin=args.qmin, qmax=args.qmax, bins=args.bins,
        reference_lines=tuple(args.ref), output_path=args.out, log_x=args.log_x,
    )
    path = write_plot(rows, spec)
    print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="siegelscan",
        description="L(1, chi) for quadratic characters mod primes, and the bounds derived from it.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("single", help="every quantity for one prime")
    s.add_argument("q", type=int, help="odd prime modulus")
    s.add_argument("--method", choices=METHODS, default="alternating")
    s.add_argument("--all-methods", action="store_true", help="compute L by all three methods")
    s.set_defaults(func=cmd_single)

    s = sub.add_parser("scan", help="CSV rows for every prime in a range")
    s.add_argument("--from", dest="qmin", type=int, default=3, help="smallest q (default 3)")
    s.add_argument("--to", dest="qmax", type=int, required=True, help="largest q")
    s.add_argument("--workers", type=int, default=_default_workers(),
                   help=f"worker processes (default ${WORKERS_ENV} or 1)")
    s.add_argument("--method", choices=METHODS, default="alternating")
    s.add_argument("--out", type=Path, help="output CSV (default stdout)")
    s.add_argument("--checkpoint", type=Path, help="checkpoint file, updated after every block")
    s.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    s.add_argument("--block-size", type=int, default=4096, help="primes per work unit")
    s.add_argument("--eps", type=_parse_eps, default=EPS_BINARY64,
                   help="machine epsilon for the error column, e.g. 2^-53")
    s.add_argument("--spectrum-dir", type=Path,
                   help="with --method fft, save each prime's full spectrum here as .npy")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("verify", help="recompute the reference tables for q <= 1000")
    s.add_argument("--method", choices=METHODS, default="alternating")
    s.add_argument("--tol", type=float, default=1e-11, help="relative tolerance")
    s.add_argument("--fixtures", type=Path, help="alternative reference CSV")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("extrema", help="min/max of c1, c2, ULI, LLI in a scan CSV")
    s.add_argument("csv", type=Path)
    s.set_defaults(func=cmd_extrema)

    s = sub.add_parser("census", help="Joshi inequality counts in a scan CSV")
    s.add_argument("csv", type=Path)
    s.add_argument("--first", type=int, default=10, help="how many initial primes to list")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("fftcheck", help="forward/inverse FFT error against the model")
    s.add_argument("q", type=int)
    s.add_argument("--eps", type=_parse_eps, default=EPS_BINARY64)
    s.add_argument("--backend", choices=("numpy", "bluestein"), default="numpy")
    s.set_defaults(func=cmd_fftcheck)

    s = sub.add_parser("plot", help="SVG scatter plot or histogram of a scan column")
    s.add_argument("csv", type=Path)
    s.add_argument("--kind", choices=("scatter", "histogram"), default="scatter")
    s.add_argument("--column", choices=PLOT_COLUMNS, required=True)
    s.add_argument("--from", dest="qmin", type=int, default=3)
    s.add_argument("--to", dest="qmax", type=int, default=10**7)
    s.add_argument("--bins", type=int, default=100)
    s.add_argument("--ref", type=_parse_ref, action="append", default=[],
                   help="reference line VALUE[:LABEL], repeatable")
    s.add_argument("--log-x", action="store_true")
    s.add_argument("--out", type=Path, required=True)
    s.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidModulusError, DomainError, IntegralityError, VerificationError,
            CheckpointError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
