"""Command-line driver: ``scan``, ``residues`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
domain error (for instance a scan point outside the convergence region).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import curves, surfaces
from .beta import beta_double_layer, beta_single_layer
from .errors import BrylinskiError, ConvergenceRegionError, NonConvergenceError, PoleError
from .residues import residue_report
from .verify import run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

_SHAPES = {
    "circle": (1, lambda R: curves.circle(R)),
    "ellipse": (2, curves.ellipse),
    "sphere": (1, lambda R: surfaces.sphere(R)),
    "ellipsoid": (3, surfaces.ellipsoid),
    "torus": (2, surfaces.torus),
}


class UsageError(Exception):
    pass


def parse_shape(text: str):
    """``name:params``, e.g. ``circle:1``, ``torus:2,1`` or ``fourier:path/to/file``."""
    name, sep, params = text.partition(":")
    if not sep or not params:
        raise UsageError(f"shape {text!r} must look like name:params")
    if name == "fourier":
        try:
            return curves.read_fourier_file(params)
        except OSError as exc:
            raise UsageError(f"cannot read {params}: {exc.strerror}") from exc
    if name not in _SHAPES:
        raise UsageError(f"unknown shape {name!r}; choose from fourier, {', '.join(_SHAPES)}")
    arity, make = _SHAPES[name]
    try:
        values = [float(v) for v in params.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad parameters in {text!r}") from exc
    if len(values) != arity:
        raise UsageError(f"{name} takes {arity} parameter(s), got {len(values)}")
    return make(*values)


def parse_range(text: str) -> np.ndarray:
    """``from:to:step`` (inclusive of ``to`` up to rounding)."""
    try:
        lo, hi, step = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"range {text!r} must be from:to:step") from exc
    if step <= 0 or hi < lo:
        raise UsageError("range needs step > 0 and to >= from")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_scan(args, out) -> int:
    shape = parse_shape(args.shape)
    evaluate = beta_double_layer if args.layer == "double" else beta_single_layer
    # evaluate everything first so a failing point leaves no partial table
    samples = [evaluate(shape, complex(s_re, args.s_imag), nodes=args.nodes) for s_re in parse_range(args.s)]
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["s_re", "s_im", "beta_re", "beta_im", "nodes", "err_est"])
    for sample in samples:
        writer.writerow([
            _fmt(sample.s.real), _fmt(sample.s.imag), _fmt(sample.value.real), _fmt(sample.value.imag),
            sample.node_count, _fmt(sample.error_estimate),
        ])
    return EXIT_OK


def cmd_residues(args, out) -> int:
    shape = parse_shape(args.shape)
    reports = residue_report(shape, args.nodes, extrapolate=args.extrapolate)
    json.dump([r.as_dict() for r in reports], out, indent=2)
    out.write("\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_verification(args.level)
    json.dump(report.as_dict(), out, indent=2)
    out.write("\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="brylinski", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    scan = sub.add_parser("scan", help="CSV of B(s) along a line Im s = const")
    scan.add_argument("--shape", required=True)
    scan.add_argument("--layer", choices=("single", "double"), default="double")
    scan.add_argument("--s", required=True, metavar="FROM:TO:STEP", help="real parts")
    scan.add_argument("--s-imag", type=float, default=0.0)
    scan.add_argument("--nodes", type=int, default=None)
    scan.set_defaults(run=cmd_scan)

    res = sub.add_parser("residues", help="JSON residue report")
    res.add_argument("--shape", required=True)
    res.add_argument("--nodes", type=int, default=None)
    res.add_argument("--extrapolate", action="store_true", help="add a quadrature-based estimate at the first pole")
    res.set_defaults(run=cmd_residues)

    ver = sub.add_parser("verify", help="run the self-checks")
    ver.add_argument("--level", choices=("fast", "full"), default="fast")
    ver.set_defaults(run=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except UsageError as exc:
        print(f"brylinski: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceRegionError, NonConvergenceError, PoleError) as exc:
        print(f"brylinski: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BrylinskiError as exc:
        # malformed shapes (non-positive sizes, singular curves) are argument errors
        print(f"brylinski: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
