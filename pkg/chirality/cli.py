"""
.. currentmodule:: chirality

Command line
------------

``chirality <command> [options]``, also available as
``python -m chirality``. Every command prints a JSON report (or writes it to
``--output``).

=============  ==========================================================
``decide``     decide chirality; exit code 0 (yes), 1 (no), 2 (unknown)
``corners``    the 20 corner sign tests of five pairs
``sixth``      the sixth point pair of five pairs
``lines``      the 27 lines and their double six incidences
``region``     boundary conics of the allowed epipole region, optional SVG
``census``     decide random samples and count outcomes
``perturb``    stability of a decision under small perturbations
``verify``     check a stored reconstruction; exit code 0 (pass), 1 (fail)
=============  ==========================================================

Malformed input and failed computations exit with code 3.

.. autofunction:: main
"""

__copyright__ = """
Copyright (C) 2024 chirality contributors
"""

__license__ = """
Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
"""

import argparse
import logging
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from chirality.arithmetic import arithmetic_context, get_arithmetic_context
from chirality.census import SampleConfig, census_run, perturbation_probe
from chirality.decide import DecisionStatus, decide
from chirality.double_six import (
    RegionReport, region_boundary_report, schlafli_verify, sixth_point_pair)
from chirality.geometry import PairSet
from chirality.inequalities import corner_sign_tests
from chirality.reconstruct import verify_chiral
from chirality.serialization import (
    InputError, dumps, encode_census_stats, encode_chiral_certificate,
    encode_corner_report, encode_decision, encode_double_six,
    encode_pair_set, encode_perturbation_report, encode_region_report,
    encode_sixth_pair, load_input, load_reconstruction, make_report,
    write_census_csv)
from chirality.version import VERSION_TEXT


logger = logging.getLogger(__name__)


EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3

_EXIT_CODES = {
        DecisionStatus.YES: EXIT_YES,
        DecisionStatus.NO: EXIT_NO,
        DecisionStatus.UNKNOWN: EXIT_UNKNOWN,
        }


# {{{ helpers

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as inf:
        return inf.read()


def _emit(doc: Dict[str, Any], output: Optional[str]) -> None:
    text = dumps(doc)
    if output is None or output == "-":
        print(text)
    else:
        with open(output, "w", encoding="utf-8") as outf:
            outf.write(text + "\n")
        logger.info("wrote report to '%s'", output)


def _load_pairs(args: argparse.Namespace) -> PairSet:
    return load_input(_read_text(args.input), args.mode)

# }}}


# {{{ commands

def cmd_decide(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args)
    start = time.perf_counter()
    decision = decide(pairs, budget=args.budget)
    elapsed = time.perf_counter() - start

    _emit(make_report("decide", {
        "input": encode_pair_set(pairs),
        "decision": encode_decision(decision, include_witness=args.witness),
        }, elapsed), args.output)
    return _EXIT_CODES[decision.status]


def cmd_corners(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args)
    reports = corner_sign_tests(pairs)
    _emit(make_report("corners", {
        "corners": [encode_corner_report(r) for r in reports],
        "passing": [[r.i + 1, r.j + 1] for r in reports if r.passed],
        }), args.output)
    return 0


def cmd_sixth(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args)
    _emit(make_report("sixth",
        encode_sixth_pair(pairs.actx, sixth_point_pair(pairs))), args.output)
    return 0


def cmd_lines(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args)
    _emit(make_report("lines",
        encode_double_six(pairs.actx, schlafli_verify(pairs))), args.output)
    return 0


def plot_region(pairs: PairSet, report: RegionReport, filename: str) -> None:
    """Draw both images with the data points, the boundary conics and the
    passing corners highlighted.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    actx = pairs.actx
    fig, axes = plt.subplots(1, 2, figsize=(11, 5))

    images = [
            ("image 1", pairs.u, "u", "C_", {i for i, _ in report.passing}),
            ("image 2", pairs.v, "v", "C^", {j for _, j in report.passing}),
            ]
    for ax, (title, pts, name, prefix, highlighted) in zip(axes, images):
        xy = actx.to_float(pts)[:, :2]
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        margin = 0.5 * max(float(np.max(hi - lo)), 1.0)
        xs = np.linspace(lo[0] - margin, hi[0] + margin, 400)
        ys = np.linspace(lo[1] - margin, hi[1] + margin, 400)
        gx, gy = np.meshgrid(xs, ys)

        for label, conic in report.conics.items():
            if not label.startswith(prefix):
                continue
            a, b, c, d, e, f = actx.to_float(conic.coeffs)
            values = a*gx**2 + b*gx*gy + c*gy**2 + d*gx + e*gy + f
            ax.contour(gx, gy, values, levels=[0], linewidths=1)
            ax.plot([], [], label=label)

        ax.scatter(xy[:, 0], xy[:, 1], color="black", zorder=3)
        for idx, (x, y) in enumerate(xy):
            ax.annotate(f"{name}{idx + 1}", (x, y), textcoords="offset points",
                    xytext=(4, 4))
            if idx in highlighted:
                ax.scatter([x], [y], s=120, facecolors="none",
                        edgecolors="red", zorder=4)

        ax.set_title(title)
        ax.set_aspect("equal")
        if report.conics:
            ax.legend(loc="best", fontsize="small")

    fig.tight_layout()
    fig.savefig(filename, format="svg")
    plt.close(fig)
    logger.info("wrote region plot to '%s'", filename)


def cmd_region(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args)
    report = region_boundary_report(pairs)
    if args.svg:
        plot_region(pairs, report, args.svg)

    _emit(make_report("region", encode_region_report(report)), args.output)
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    cfg = SampleConfig(seed=args.seed, n=args.n, generator=args.generator,
            grid=tuple(args.grid), denominator=args.denominator, k=args.k)
    actx = get_arithmetic_context()
    stats = census_run(cfg, actx)

    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as outf:
            write_census_csv(stats, outf)

    doc = {"mode": actx.name, **encode_census_stats(stats)}
    _emit(make_report("census", doc, stats.runtime), args.output)
    return 0


def cmd_perturb(args: argparse.Namespace) -> int:
    pairs = _load_pairs(args)
    try:
        radius = Fraction(args.radius)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid radius '{args.radius}'") from exc

    report = perturbation_probe(pairs, radius, args.trials, args.seed)
    _emit(make_report("perturb", encode_perturbation_report(report)),
            args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    recon = load_reconstruction(_read_text(args.reconstruction))
    cert = verify_chiral(recon)
    doc = {"certificate": encode_chiral_certificate(cert)}
    passed = cert.passed

    if args.input is not None:
        pairs = load_input(_read_text(args.input), recon.actx.name)
        doc["reprojects"] = reprojects = recon.reprojects(pairs)
        passed = passed and reprojects

    doc["passed"] = passed
    _emit(make_report("verify", doc), args.output)
    return 0 if passed else 1

# }}}


# {{{ argument parsing

def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", "-i", required=True,
            help="input JSON file with point pairs ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
            prog="chirality",
            description="Decide whether point pairs admit a chiral "
            "reconstruction.")
    parser.add_argument("--version", action="version", version=VERSION_TEXT)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default="warning",
            choices=["debug", "info", "warning", "error"])
    common.add_argument("--mode", choices=["exact", "float"], default=None,
            help="arithmetic mode (default: from the input document, "
            "else CHIRALITY_ARITHMETIC)")
    common.add_argument("--output", "-o", default=None,
            help="write the JSON report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable[[argparse.Namespace], int],
            help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("decide", cmd_decide, "decide chirality")
    _add_input(p)
    p.add_argument("--witness", action="store_true",
            help="include the verified reconstruction in the report")
    p.add_argument("--budget", type=int, default=None,
            help="witness search budget (default: CHIRALITY_WITNESS_BUDGET "
            "or 50)")

    _add_input(add("corners", cmd_corners, "corner sign tests of five pairs"))
    _add_input(add("sixth", cmd_sixth, "sixth point pair of five pairs"))
    _add_input(add("lines", cmd_lines, "27 lines and double six"))

    p = add("region", cmd_region, "boundary of the allowed epipole region")
    _add_input(p)
    p.add_argument("--svg", default=None, help="write a plot of both images")

    p = add("census", cmd_census, "decide random samples")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--grid", type=int, nargs=2, default=[0, 8],
            metavar=("LO", "HI"))
    p.add_argument("--generator", choices=["grid", "rational"], default="grid")
    p.add_argument("--denominator", type=int, default=16)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--csv", default=None, help="per-sample outcome table")

    p = add("perturb", cmd_perturb, "stability under perturbation")
    _add_input(p)
    p.add_argument("--radius", default="1/1000")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = add("verify", cmd_verify, "verify a stored reconstruction")
    p.add_argument("--reconstruction", "-r", required=True)
    p.add_argument("--input", "-i", default=None,
            help="also check reprojection onto these pairs")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=args.log_level.upper(),
            format="%(levelname)s %(name)s: %(message)s")

    try:
        if args.mode is not None:
            with arithmetic_context(args.mode):
                return args.func(args)
        return args.func(args)
    except InputError as exc:
        print(f"chirality: input error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"chirality: {exc}", file=sys.stderr)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        logger.debug("command failed", exc_info=True)
        print(f"chirality: {args.command} failed: {type(exc).__name__}: {exc}",
                file=sys.stderr)

    return EXIT_ERROR

# }}}

# vim: foldmethod=marker
