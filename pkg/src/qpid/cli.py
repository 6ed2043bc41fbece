"""Command-line front end: ``qpid [global flags] <tables|motivating|scramble|darwinism|pooling> ...``

CSV goes to ``--out`` (or stdout); human-readable summaries go to stderr.
Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from . import __version__, experiments
from .errors import NumericalError, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _factors(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(f) for f in text.split(",") if f.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad factor list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qpid {__version__}")
    parser.add_argument("--seed", type=_u64, default=0)
    parser.add_argument("--variant", choices=("star", "plain"), default="star")
    parser.add_argument("--out", help="CSV output path (default: stdout)")
    parser.add_argument("--plot", help="optional SVG plot path")
    parser.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="classical PID of the triadic/dyadic tables or a CSV table")
    p.add_argument("--dist", default="triadic", help="'triadic', 'dyadic', or a t,a,b,p CSV path")

    sub.add_parser("motivating", help="quantum PID of the superposition states of both tables")

    p = sub.add_parser("scramble", help="scrambling sweep over splits of D_AB into D_A x D_B")
    p.add_argument("--factors", type=_factors, default=experiments.DESK_FACTORS,
                   help="comma-separated local dimensions of AB (default 2,2,3,3)")
    p.add_argument("--full", action="store_true", help="use the large factors 2,2,3,3,5,5 (D_AB=900)")
    p.add_argument("--d-t", type=int, default=4)
    p.add_argument("--draws", type=int, default=1)

    p = sub.add_parser("darwinism", help="scan m_A for the two-branch Darwinism state")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--s", type=float, default=0.85)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--engine", choices=("branch", "dense"), default="branch")

    p = sub.add_parser("pooling", help="Monte Carlo of bq1 vs bq0 for random states")
    p.add_argument("--system", choices=("qubit", "qutrit"), default="qubit")
    p.add_argument("--kind", choices=("pure", "mixed"), default="mixed")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--env-dim", type=int, default=None, help="environment dimension for mixed states")
    return parser


def _run(args) -> tuple[experiments.ResultTable, dict]:
    plot = {}
    if args.command == "tables":
        result, table = experiments.run_tables(args.dist, seed=args.seed)
        print(f"B={result.b:.6f} unique_a={result.unique_a:.6f} unique_b={result.unique_b:.6f}", file=sys.stderr)
    elif args.command == "motivating":
        results, table = experiments.run_motivating(args.variant, seed=args.seed)
        for name, r in results.items():
            print(f"{name}: B_Q={r.bq:.6f} unique_a={r.unique_a:.6f} unique_b={r.unique_b:.6f}", file=sys.stderr)
    elif args.command == "scramble":
        factors = experiments.FULL_FACTORS if args.full else args.factors
        config = experiments.SweepConfig(factors, args.d_t, args.draws, args.seed, args.variant)
        table = experiments.run_scramble(config, workers=args.workers)
        plot = dict(x="x", ys=("unique_a", "unique_b", "i_ta", "i_tb"))
    elif args.command == "darwinism":
        table = experiments.run_darwinism(
            args.n, args.s, args.p, args.engine, args.variant, seed=args.seed, workers=args.workers
        )
        plot = dict(x="m_a", ys=("i_ta", "unique_a"))
    else:
        table = experiments.run_pooling(
            args.system, args.kind, args.samples, args.seed, args.variant, args.env_dim, workers=args.workers
        )
        print(f"fraction(bq1 <= bq0) = {table.summary['fraction']:.4f}", file=sys.stderr)
        plot = dict(x="bq0", ys=("bq1",), linestyle="none")
    return table, plot


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            table, plot = _run(args)
    except ValidationError as exc:
        print(f"qpid: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"qpid: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"qpid: error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.out:
        table.write_csv(args.out)
    else:
        sys.stdout.write(table.to_csv())
    if args.plot:
        if not plot:
            print("qpid: --plot ignored for this command", file=sys.stderr)
        else:
            experiments.plot_svg(table, args.plot, **plot)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
