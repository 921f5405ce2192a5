"""Command-line front end: ``locuncert {eig,bounds,verify,scan}``.

Exit codes: 0 success, 1 a check failed (non-convergence, violated inequality
or unreliable case), 2 usage or output error.
"""

from __future__ import annotations

import argparse
import math
import sys
from contextlib import contextmanager
from typing import Sequence

import numpy as np

from . import report
from .coarse import BinningScheme
from .harness import (
    DistributionHook,
    catalog,
    default_grid,
    sweep_bounds,
    verify_state,
    width_scan,
)
from .prolate import DEFAULT_NODES, MIN_NODES, solve_concentration
from .state import GridSpec, make_bump, make_gaussian, random_hermite_state

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

BOUNDS_COLUMNS_HELP = """\
output columns:
  gamma          delta_x * delta_p / hbar
  alpha, beta    conjugate Renyi orders, 1/alpha + 1/beta = 2
  lambda0        largest eigenvalue of the sinc-kernel concentration problem
  c_max          sqrt(lambda0), maximal overlap of intra-bin basis states
  bound_mu       Maassen-Uffink type bound -2 ln c_max (joint distributions)
  bound_deutsch  Deutsch type bound -2 ln((1 + c_max)/2) (bin probabilities)
  bound_beckner  bound from the Beckner inequality plus Jensen steps
  beckner_valid  true while bound_beckner > 0, i.e. gamma below its threshold
                 (e*pi for Shannon entropies)
  best_ab        best bound for the joint (bin, level) distributions,
                 -ln min(gamma/(e pi), lambda0) for Shannon entropies
  best_qp        best bound for the bin probabilities q_k, p_l,
                 -ln min(gamma/(e pi), (1 + sqrt(lambda0))^2 / 4) for Shannon
JSON output adds "crossovers": per alpha, the gamma at which the Beckner bound
meets the lambda0 bound (kind "ab") or the Deutsch type bound (kind "qp").
"""

EIG_COLUMNS_HELP = """\
output fields:
  lambda0            largest eigenvalue of (1/pi) sin(gamma (t-s)/4)/(t-s) on [-1, 1]
  deficit            1 - lambda0, carried separately so it survives rounding
  c_max              sqrt(lambda0), the maximal intra-bin overlap
  convergence_delta  change of lambda0 against a solve with fewer nodes
  asymptote_ratio    lambda0 / (gamma / 2 pi); tends to 1 as gamma -> 0
  spectrum_head      leading eigenvalues above the roundoff floor
"""

VERIFY_COLUMNS_HELP = """\
output columns:
  H_q, H_p         Renyi entropies of orders alpha, beta of the bin probabilities
  H_A, H_B         same for the joint (bin, intra-bin level) distributions
  bound_*, best_*  bounds as in `locuncert bounds`
  min_slack        smallest entropy sum minus applicable bound
  single_bin_max   max_k q_k + max_l p_l
  single_bin_limit 1 + sqrt(lambda0), which single_bin_max may not exceed
  captured_A/B     probability captured by the truncated joint distributions
The exit status is 1 when any slack is below -1e-8 or a case is unreliable.
"""


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return value


def _alpha(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    value = _positive_float(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"alpha must be at least 1: {text!r}")
    return value


def _nodes(text: str) -> int:
    value = int(text)
    if value < MIN_NODES:
        raise argparse.ArgumentTypeError(f"need at least {MIN_NODES} nodes")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locuncert",
        description="Entropic uncertainty bounds for binned position and momentum measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    raw = argparse.RawDescriptionHelpFormatter

    eig = sub.add_parser("eig", help="solve the concentration eigenproblem", epilog=EIG_COLUMNS_HELP, formatter_class=raw)
    eig.add_argument("--gamma", type=_positive_float, required=True)
    eig.add_argument("--nodes", type=_nodes, default=DEFAULT_NODES)
    eig.add_argument("--format", choices=("text", "json"), default="text")
    eig.add_argument("--output", "-o")

    bnd = sub.add_parser("bounds", help="tabulate every bound over gamma and alpha", epilog=BOUNDS_COLUMNS_HELP, formatter_class=raw)
    grid = bnd.add_mutually_exclusive_group(required=True)
    grid.add_argument("--gamma", type=_positive_float, nargs="+")
    grid.add_argument("--gamma-range", nargs=3, metavar=("START", "STOP", "COUNT"), help="COUNT values from START to STOP")
    bnd.add_argument("--log", action="store_true", help="space --gamma-range logarithmically")
    bnd.add_argument("--alpha", type=_alpha, nargs="+", default=[1.0])
    bnd.add_argument("--nodes", type=_nodes, default=DEFAULT_NODES)
    bnd.add_argument("--no-crossovers", action="store_true")
    bnd.add_argument("--format", choices=("csv", "json"), default="csv")
    bnd.add_argument("--output", "-o")

    ver = sub.add_parser("verify", help="check every inequality on a state", epilog=VERIFY_COLUMNS_HELP, formatter_class=raw)
    ver.add_argument("--state", choices=("gaussian", "hermite", "bump", "catalog"), default="gaussian")
    ver.add_argument("--width", type=_positive_float, default=1.0, help="Gaussian width or bump support")
    ver.add_argument("--center", type=float, default=0.0)
    ver.add_argument("--shift", type=float, default=0.0, help="mean momentum")
    ver.add_argument("--gamma", type=_positive_float, help="equal bin widths sqrt(gamma hbar)")
    ver.add_argument("--dx", type=_positive_float, help="position bin width")
    ver.add_argument("--dp", type=_positive_float, help="momentum bin width")
    ver.add_argument("--hbar", type=_positive_float, default=1.0)
    ver.add_argument("--alpha", type=_alpha, nargs="+", default=[1.0])
    ab = ver.add_mutually_exclusive_group()
    ab.add_argument("--with-ab", dest="with_ab", action="store_true", default=None, help="also check the joint distributions")
    ab.add_argument("--no-ab", dest="with_ab", action="store_false")
    ver.add_argument("--basis-size", type=int, default=32)
    ver.add_argument("--grid-points", type=int, default=4096)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--nodes", type=_nodes, default=DEFAULT_NODES)
    ver.add_argument("--format", choices=("json", "csv"), default="json")
    ver.add_argument("--output", "-o")

    scan = sub.add_parser("scan", help="entropy sums of Gaussians over a range of widths")
    scan.add_argument("--gamma", type=_positive_float, required=True)
    scan.add_argument("--widths", type=_positive_float, nargs="+", default=[0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0])
    scan.add_argument("--alpha", type=_alpha, default=1.0)
    scan.add_argument("--hbar", type=_positive_float, default=1.0)
    scan.add_argument("--grid-points", type=int, default=4096)
    scan.add_argument("--format", choices=("json", "csv"), default="json")
    scan.add_argument("--output", "-o")
    return parser


@contextmanager
def _open_output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def _emit(text: str, path: str | None) -> None:
    with _open_output(path) as out:
        out.write(text)


def _gamma_values(args) -> list[float]:
    if args.gamma is not None:
        return list(args.gamma)
    start, stop = _positive_float(args.gamma_range[0]), _positive_float(args.gamma_range[1])
    count = int(args.gamma_range[2])
    if count < 1:
        raise argparse.ArgumentTypeError("COUNT must be at least 1")
    values = np.geomspace(start, stop, count) if args.log else np.linspace(start, stop, count)
    return [float(v) for v in values]


def cmd_eig(args) -> int:
    sol = solve_concentration(args.gamma, args.nodes)
    if args.format == "json":
        _emit(report.dumps(report.eig_document(sol)), args.output)
    else:
        lines = [
            f"gamma = {report.fmt(sol.gamma)}",
            f"nodes = {sol.node_count}",
            f"lambda0 = {report.fmt(sol.lambda0)}",
            f"deficit = {report.fmt(sol.deficit)}",
            f"c_max = {report.fmt(sol.c_max)}",
            f"convergence_delta = {report.fmt(sol.convergence_delta)}",
            f"converged = {report.fmt(sol.converged)}",
            f"asymptote_ratio = {report.fmt(sol.asymptote_ratio)}",
            "spectrum_head = " + ", ".join(report.fmt(v) for v in sol.spectrum_head),
        ]
        _emit("\n".join(lines) + "\n", args.output)
    if not sol.converged:
        print(f"locuncert: eigenvalue not converged (delta {sol.convergence_delta:.3g})", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_bounds(args) -> int:
    sweep = sweep_bounds(_gamma_values(args), args.alpha, args.nodes, crossovers=not args.no_crossovers)
    if args.format == "json":
        text = report.dumps(report.bounds_document(sweep))
    else:
        text = report.csv_text(report.write_bounds_csv, sweep.reports)
    _emit(text, args.output)
    return EXIT_OK


def _scheme(args) -> BinningScheme:
    if args.gamma is not None:
        if args.dx is not None or args.dp is not None:
            raise argparse.ArgumentTypeError("give either --gamma or --dx/--dp")
        return BinningScheme.from_gamma(args.gamma, args.hbar)
    if args.dx is None or args.dp is None:
        if args.dx is None and args.dp is None:
            return BinningScheme.from_gamma(1.0, args.hbar)
        raise argparse.ArgumentTypeError("--dx and --dp must be given together")
    return BinningScheme(args.dx, args.dp, args.hbar)


def _states(args, scheme: BinningScheme):
    grid = default_grid(args.hbar, args.grid_points)
    if args.state == "catalog":
        return catalog(scheme, grid, args.seed)
    if args.state == "gaussian":
        desc = {"name": "gaussian", "width": args.width, "center": args.center, "momentum_shift": args.shift}
        return [(desc, make_gaussian(args.center, args.shift, args.width, grid, args.hbar))]
    if args.state == "bump":
        desc = {"name": "bump", "support": args.width, "center": args.center}
        return [(desc, make_bump(args.center, args.width, grid, args.hbar))]
    rng = np.random.default_rng(args.seed)
    return [({"name": "random_hermite", "seed": args.seed, "index": 0}, random_hermite_state(rng, grid, args.hbar))]


def cmd_verify(args, distribution_hook: DistributionHook | None = None) -> int:
    scheme = _scheme(args)
    cases = []
    for desc, state in _states(args, scheme):
        for alpha in args.alpha:
            cases.append(
                verify_state(
                    state,
                    scheme,
                    alpha,
                    args.nodes,
                    with_ab=args.with_ab,
                    basis_size=args.basis_size,
                    descriptor=desc,
                    distribution_hook=distribution_hook,
                )
            )
    if args.format == "json":
        text = report.dumps(report.verify_document(cases))
    else:
        text = report.csv_text(report.write_verify_csv, cases)
    _emit(text, args.output)
    failed = [i for i, c in enumerate(cases) if not c.passed]
    if failed:
        print(f"locuncert: {len(failed)} of {len(cases)} cases failed: {failed}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_scan(args) -> int:
    grid: GridSpec = default_grid(args.hbar, args.grid_points)
    scan = width_scan(args.gamma, args.widths, args.alpha, args.hbar, grid)
    if args.format == "json":
        text = report.dumps(report.scan_document(scan))
    else:
        text = report.csv_text(report.write_scan_csv, scan)
    _emit(text, args.output)
    return EXIT_OK if scan.passed else EXIT_FAILED


def main(argv: Sequence[str] | None = None, distribution_hook: DistributionHook | None = None) -> int:
    """Run the CLI. ``distribution_hook`` is passed to every verification (test hook)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eig":
            return cmd_eig(args)
        if args.command == "bounds":
            return cmd_bounds(args)
        if args.command == "verify":
            return cmd_verify(args, distribution_hook)
        return cmd_scan(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except (ValueError, OSError) as exc:
        print(f"locuncert: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
