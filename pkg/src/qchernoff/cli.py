"""Command-line entry point: ``qchernoff qcb|error|converge|classical|nsmap``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import harness, io
from .exceptions import QChernoffError, ValidationError

COMMANDS = {
    "qcb": harness.run_qcb,
    "error": harness.run_error,
    "converge": harness.run_converge,
    "classical": harness.run_classical,
    "nsmap": harness.run_nsmap,
}


def _priors(text: str) -> tuple[float, float]:
    try:
        w0, w1 = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected w0,w1, got {text!r}") from None
    return w0, w1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qchernoff",
        description="Bayes error exponents for discriminating two quantum states.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--state0", help="state file (distribution file for 'classical')")
    parser.add_argument("--state1", help="state file (distribution file for 'classical')")
    parser.add_argument(
        "--gen",
        action="append",
        default=[],
        metavar="d,rank,seed",
        help="random state spec; once for both states, twice for one each",
    )
    parser.add_argument("--n", type=int, help="copies (error) or largest n (converge, classical)")
    parser.add_argument("--grid", type=int, default=101, help="s-grid size for identity checks")
    parser.add_argument("--eps-rank", type=float, help="relative zero-eigenvalue threshold")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--priors", type=_priors, help="w0,w1 (classical only)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.priors is not None and args.command != "classical":
            raise ValidationError("--priors is only accepted by the classical subcommand")
        cfg = harness.ExperimentConfig(
            state0=args.state0,
            state1=args.state1,
            gens=[harness.parse_gen(g) for g in args.gen],
            n=args.n,
            grid=args.grid,
            eps_rank=args.eps_rank,
            out=args.out,
            priors=args.priors,
        )
        result = COMMANDS[args.command](cfg)
    except QChernoffError as exc:
        sys.stderr.write(
            io.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code})
        )
        return exc.exit_code
    text = result if isinstance(result, str) else io.dumps(result)
    if args.out:
        Path(args.out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
