"""Command-line driver: ``ncriemann verify`` and ``ncriemann eval``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .algebra import ALGEBRAS, MixedAlgebraError
from .expr import ParseError, parse
from .oracle import DEFAULT_LAMBDA2, DEFAULT_THETAS, DEFAULT_TOL, MatrixRep, default_reps
from .pipeline import FAULTS, UnknownFault, first_failure, run_verify, to_markdown


def _theta(text: str):
    """``p/N`` or a bare numerator ``p`` (the dimension then comes from ``--dim``)."""
    try:
        if "/" in text:
            p, n = text.split("/", 1)
            return int(p), int(n)
        return int(text), None
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid theta {text!r}; expected p/N") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}") from None


def _add_rep_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("numeric oracle")
    g.add_argument("--theta", type=_theta, action="append", metavar="p/N",
                   help="deformation parameter theta = p/N (repeatable)")
    g.add_argument("--dim", type=int, help="matrix size N, used when --theta gives only p")
    g.add_argument("--lambda2", type=_fraction, action="append", metavar="r",
                   help="sphere radius parameter lambda^2 in (0, 1) (repeatable)")
    g.add_argument("--tol", type=float, default=DEFAULT_TOL, help="operator-norm tolerance (default 1e-10)")


def _reps(args, algebra, default: bool) -> Optional[List[MatrixRep]]:
    if args.theta is None and args.dim is None and args.lambda2 is None:
        return default_reps(algebra) if default else None
    thetas = []
    for p, n in args.theta or [(t[0], None) for t in DEFAULT_THETAS]:
        if n is None:
            if args.dim is None:
                raise ValueError("--theta without a denominator needs --dim")
            n = args.dim
        elif args.dim is not None and args.dim != n:
            raise ValueError(f"--dim {args.dim} conflicts with theta {p}/{n}")
        thetas.append((p, n))
    lambdas = args.lambda2 or list(DEFAULT_LAMBDA2)
    return default_reps(algebra, thetas, lambdas)


def cmd_verify(args) -> int:
    alg = ALGEBRAS[args.target]
    try:
        reps = _reps(args, alg, default=True)
        report = run_verify(args.target, reps, args.tol, args.inject_fault, args.timing)
    except (ValueError, UnknownFault) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2) + "\n" if args.format == "json" else to_markdown(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report["passed"]:
        print(f"FAILED {first_failure(report)}", file=sys.stderr)
        return 1
    return 0


def _format_matrix(m: np.ndarray) -> str:
    def c(z: complex) -> str:
        re, im = round(z.real, 10) + 0.0, round(z.imag, 10) + 0.0
        return f"{re:.6g}{im:+.6g}j"

    return "\n".join("[" + ", ".join(c(z) for z in row) + "]" for row in m)


def cmd_eval(args) -> int:
    alg = ALGEBRAS[args.target]
    try:
        value = parse(args.expr, alg)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except MixedAlgebraError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(value)
    try:
        reps = _reps(args, alg, default=False)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    for r in reps or []:
        print(f"# {r.label()}")
        print(_format_matrix(r.evaluate(value)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncriemann",
                                 description="Levi-Civita connections and curvature on the noncommutative torus and 3-sphere")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="solve and verify a calculus end to end")
    v.add_argument("--target", choices=sorted(ALGEBRAS), required=True)
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--out", metavar="PATH")
    v.add_argument("--inject-fault", choices=sorted(FAULTS), metavar="NAME",
                   help="corrupt one quantity after solving: " + ", ".join(sorted(FAULTS)))
    v.add_argument("--timing", action="store_true", help="include stage timings (output is then not byte-stable)")
    _add_rep_flags(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="print the normal form of an expression")
    e.add_argument("expr")
    e.add_argument("--target", choices=sorted(ALGEBRAS), default="sphere")
    _add_rep_flags(e)
    e.set_defaults(func=cmd_eval)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
