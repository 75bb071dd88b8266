"""
.. currentmodule:: chirality

JSON documents
--------------

Exact rationals are written as integers when integral and as ``"p/q"``
strings otherwise; floating point values are written as JSON numbers.
Indices in reports are one-based, matching the labels :math:`u_1, \\dots`
used in printed tables.

Input documents look like::

    {"mode": "exact",
     "pairs": [{"u": [0, 1], "v": [3, 0]},
               {"u": ["1/2", 0.25], "v": [5, 0]}]}

Decimal numbers in input are read exactly.

.. autodata:: SCHEMA_VERSION
.. autoexception:: InputError
.. autofunction:: load_input
.. autofunction:: load_reconstruction
.. autofunction:: encode_decision
.. autofunction:: make_report
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

import csv
import json
from fractions import Fraction
from typing import IO, Any, Dict, Optional, Tuple

import numpy as np

from chirality.arithmetic import (
    ArithmeticContext, get_arithmetic_context, make_arithmetic_context,
    to_fraction)
from chirality.census import OUTCOMES, CensusStats, PerturbationReport
from chirality.decide import (
    ArrangementCertificate, CornerCertificate, Decision, SubsetCertificate,
    Witness)
from chirality.double_six import Conic, DoubleSix, RegionReport, SurfaceLine
from chirality.epipolar import GenericityReport
from chirality.geometry import Camera, GeometryError, PairSet
from chirality.inequalities import CornerReport
from chirality.reconstruct import ChiralCertificate, Reconstruction


SCHEMA_VERSION = 1
"""Bumped whenever a report field changes meaning or disappears."""


class InputError(ValueError):
    """Malformed input document.

    .. attribute:: line
    .. attribute:: column

        Position of a syntax error, if known.
    """

    def __init__(self, message: str, line: Optional[int] = None,
            column: Optional[int] = None) -> None:
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


# {{{ scalars

def encode_scalar(x: Any) -> Any:
    if isinstance(x, (float, np.floating)):
        return float(x)
    f = to_fraction(x)
    if f.denominator == 1:
        return f.numerator
    return f"{f.numerator}/{f.denominator}"


def encode_array(ary: Any) -> Any:
    ary = np.asarray(ary, dtype=object)
    if ary.ndim == 0:
        return encode_scalar(ary[()])
    return [encode_array(sub) for sub in ary]


def _decode_scalar(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str, Fraction, float)):
        raise InputError(f"{where}: expected a number or 'p/q' string, got {x!r}")
    try:
        return to_fraction(x)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def _decode_array(data: Any, shape: Tuple[int, ...], where: str,
        actx: ArithmeticContext) -> np.ndarray:
    ary = np.asarray(data, dtype=object)
    if ary.shape != shape:
        raise InputError(f"{where}: expected shape {shape}, got {ary.shape}")
    return actx.array(np.vectorize(
        lambda x: _decode_scalar(x, where), otypes=[object])(ary))


def _parse(text: str) -> Any:
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, exc.lineno, exc.colno) from exc

# }}}


# {{{ input

def load_input(text: str, mode: Optional[str] = None) -> PairSet:
    """Parse an input document into a :class:`~chirality.PairSet`.

    :arg mode: overrides the document's ``"mode"``; if neither is given the
        global arithmetic context is used.
    """
    doc = _parse(text)
    if not isinstance(doc, dict) or "pairs" not in doc:
        raise InputError("document must be an object with a 'pairs' list")

    mode = mode or doc.get("mode")
    try:
        actx = (make_arithmetic_context(mode) if mode is not None
                else get_arithmetic_context())
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    pairs = doc["pairs"]
    if not isinstance(pairs, list) or not pairs:
        raise InputError("'pairs' must be a nonempty list")

    u, v = [], []
    for idx, pair in enumerate(pairs, start=1):
        if not isinstance(pair, dict) or set(pair) != {"u", "v"}:
            raise InputError(f"pair {idx}: expected an object with keys 'u', 'v'")
        for key, dest in [("u", u), ("v", v)]:
            pt = pair[key]
            if not isinstance(pt, list) or len(pt) not in (2, 3):
                raise InputError(f"pair {idx}: '{key}' must have 2 coordinates")
            dest.append([_decode_scalar(x, f"pair {idx}, {key}") for x in pt])

    try:
        return PairSet.from_affine(u, v, actx)
    except GeometryError as exc:
        raise InputError(str(exc)) from exc


def encode_pair_set(P: PairSet) -> Dict[str, Any]:
    u, v = P.affine()
    return {
            "mode": P.actx.name,
            "pairs": [{"u": encode_array(a), "v": encode_array(b)}
                for a, b in zip(u, v)],
            }

# }}}


# {{{ reconstructions

def encode_reconstruction(R: Reconstruction) -> Dict[str, Any]:
    return {
            "schema": SCHEMA_VERSION,
            "mode": R.actx.name,
            "A1": encode_array(R.A1.matrix),
            "A2": encode_array(R.A2.matrix),
            "Q": encode_array(R.Q),
            "w1": encode_array(R.w1),
            "w2": encode_array(R.w2),
            }


def load_reconstruction(text: str) -> Reconstruction:
    doc = _parse(text)
    if isinstance(doc, dict) and "reconstruction" in doc:
        doc = doc["reconstruction"]
    if not isinstance(doc, dict):
        raise InputError("reconstruction must be a JSON object")

    missing = {"A1", "A2", "Q", "w1", "w2"} - set(doc)
    if missing:
        raise InputError(f"reconstruction lacks {sorted(missing)}")

    try:
        actx = make_arithmetic_context(doc.get("mode", "exact"))
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    k = len(doc["Q"])
    try:
        return Reconstruction(
                Camera(_decode_array(doc["A1"], (3, 4), "A1", actx), actx),
                Camera(_decode_array(doc["A2"], (3, 4), "A2", actx), actx),
                _decode_array(doc["Q"], (k, 4), "Q", actx),
                _decode_array(doc["w1"], (k,), "w1", actx),
                _decode_array(doc["w2"], (k,), "w2", actx))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def encode_chiral_certificate(cert: ChiralCertificate) -> Dict[str, Any]:
    return {
            "passed": cert.passed,
            "strict": cert.strict,
            "products": cert.products.tolist(),
            "violations": [{"point": i + 1, "product": name}
                for i, name in cert.violations()],
            }

# }}}


# {{{ decisions

def encode_corner_report(report: CornerReport) -> Dict[str, Any]:
    return {
            "corner": [report.i + 1, report.j + 1],
            "labels": [[a + 1, b + 1] for a, b in report.labels],
            "values": encode_array(report.values),
            "passed": report.passed,
            }


def encode_certificate(cert: Any) -> Any:
    if cert is None:
        return None
    if isinstance(cert, CornerCertificate):
        return {
                "kind": "corners",
                "passing": [[i + 1, j + 1] for i, j in cert.passing],
                "reports": [encode_corner_report(r) for r in cert.reports],
                }
    if isinstance(cert, ArrangementCertificate):
        return {
                "kind": "arrangement",
                "pairs": [[i + 1, j + 1] for i, j in cert.pairs],
                "signs": list(cert.signs),
                "images_swapped": cert.images_swapped,
                "feasible": cert.feasible,
                }
    if isinstance(cert, SubsetCertificate):
        return {
                "kind": "subset",
                "indices": [i + 1 for i in cert.indices],
                "decision": encode_decision(cert.decision),
                }
    if isinstance(cert, GenericityReport):
        return {
                "kind": "genericity",
                "failed_condition": cert.failed_condition,
                "message": cert.message,
                }
    return {"kind": "note", "message": str(cert)}


def encode_witness(witness: Witness) -> Dict[str, Any]:
    return {
            "X": encode_array(witness.candidate.X),
            "t": encode_array(witness.candidate.t),
            "e1": encode_array(witness.candidate.e1),
            "reconstruction": encode_reconstruction(witness.reconstruction),
            }


def encode_decision(decision: Decision,
        include_witness: bool = True) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
            "status": decision.status.value,
            "reason": decision.reason,
            "flags": list(decision.flags),
            "certificate": encode_certificate(decision.certificate),
            }
    if include_witness and decision.witness is not None:
        doc["witness"] = encode_witness(decision.witness)
    return doc

# }}}


# {{{ surface geometry

def encode_conic(conic: Conic) -> Dict[str, Any]:
    return {"label": conic.label, "coefficients": encode_array(conic.coeffs)}


def encode_surface_line(line: SurfaceLine) -> Dict[str, Any]:
    return {
            "label": line.label,
            "kind": line.kind,
            "indices": list(line.indices),
            "basis": encode_array(line.basis),
            }


def encode_sixth_pair(actx: ArithmeticContext,
        sixth: Tuple[np.ndarray, np.ndarray]) -> Dict[str, Any]:
    u0, v0 = sixth
    return {
            "u0": encode_array(actx.normalize(u0)),
            "v0": encode_array(actx.normalize(v0)),
            "u0_affine": encode_array(u0),
            "v0_affine": encode_array(v0),
            }


def encode_double_six(actx: ArithmeticContext,
        double_six: DoubleSix) -> Dict[str, Any]:
    return {
            "sixth": encode_sixth_pair(actx, double_six.sixth),
            "lines": [encode_surface_line(line) for line in double_six.lines],
            "incidence": double_six.incidence.astype(int).tolist(),
            }


def encode_region_report(report: RegionReport) -> Dict[str, Any]:
    labels = report.labels()
    return {
            "empty": report.is_empty,
            "passing": [[i + 1, j + 1] for i, j in report.passing],
            "image1": {f"u{i + 1}": names for i, names in labels["image1"].items()},
            "image2": {f"v{j + 1}": names for j, names in labels["image2"].items()},
            "conics": [encode_conic(c) for c in report.conics.values()],
            }

# }}}


# {{{ census

def encode_census_stats(stats: CensusStats) -> Dict[str, Any]:
    cfg = stats.config
    return {
            "config": {
                "seed": cfg.seed, "n": cfg.n, "generator": cfg.generator,
                "grid": list(cfg.grid), "denominator": cfg.denominator,
                "k": cfg.k,
                },
            "counts": dict(stats.counts),
            "frequencies": {o: stats.frequency(o) for o in OUTCOMES},
            "examples": {outcome: {"index": index, **encode_pair_set(P)}
                for outcome, (index, P) in stats.examples.items()},
            "runtime": stats.runtime,
            }


def write_census_csv(stats: CensusStats, outf: IO[str]) -> None:
    """One row per sample: index and outcome."""
    writer = csv.writer(outf)
    writer.writerow(["index", "outcome"])
    for index, outcome in enumerate(stats.outcomes):
        writer.writerow([index, outcome])


def encode_perturbation_report(report: PerturbationReport) -> Dict[str, Any]:
    return {
            "baseline": report.baseline.value,
            "radius": encode_scalar(report.radius),
            "trials": report.trials,
            "preserved": report.preserved,
            "preserved_fraction": report.preserved_fraction,
            "outcomes": report.outcomes,
            }

# }}}


def make_report(command: str, payload: Dict[str, Any],
        elapsed: Optional[float] = None) -> Dict[str, Any]:
    report: Dict[str, Any] = {"schema": SCHEMA_VERSION, "command": command}
    report.update(payload)
    if elapsed is not None:
        report["timing"] = {"seconds": elapsed}
    return report


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2)

# vim: foldmethod=marker
