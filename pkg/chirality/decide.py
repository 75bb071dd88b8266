"""
.. currentmodule:: chirality

Deciding chirality
------------------

:func:`decide` answers whether a :class:`~chirality.PairSet` admits a
chiral reconstruction. Every *Yes* with a witness carries a verified
:class:`~chirality.Reconstruction`; every *No* carries a certificate:

* five pairs: the 20 :class:`~chirality.CornerReport`\\ s, none passing;
* four pairs with one collinear image: the sign vector of that image,
  for which no matching point exists in the other image
  (:class:`ArrangementCertificate`);
* six or more pairs: a five-pair subset without a chiral reconstruction.

Non-generic five-pair inputs and undecided larger inputs are reported as
*Unknown*.

.. autoclass:: DecisionStatus
.. autoclass:: Witness
.. autoclass:: Decision
.. autoclass:: CornerCertificate
.. autoclass:: ArrangementCertificate
.. autoclass:: SubsetCertificate

.. autofunction:: decide
.. autofunction:: decide_k_le_3
.. autofunction:: decide_k4
.. autofunction:: decide_k5
.. autofunction:: decide_k_ge_6
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

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from pytools import ProcessLogger

from chirality.arithmetic import ArithmeticContext, get_thread_count, \
    get_witness_budget
from chirality.epipolar import (
    DegenerateWall, EpipolarViolation, FundamentalCandidate,
    adjoint3, constrained_solutions, genericity_check, lp_basis,
    smooth_point_check, wall_pencil)
from chirality.feasibility import strictly_feasible_point
from chirality.geometry import (
    GeometryError, PairSet, det3, projectively_equal, rank_of_points, skew)
from chirality.inequalities import (
    CornerReport, DegenerateInput, chirotope_match, corner_sign_tests,
    sign_table)
from chirality.reconstruct import (
    IrregularPair, NotFeasible, Reconstruction, UpgradeInfeasible,
    reconstruct_from_X)


logger = logging.getLogger(__name__)


# {{{ decision types

class DecisionStatus(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True, eq=False)
class Witness:
    candidate: FundamentalCandidate
    reconstruction: Reconstruction


@dataclass(frozen=True)
class CornerCertificate:
    reports: Tuple[CornerReport, ...]

    @property
    def passing(self) -> List[Tuple[int, int]]:
        return [(r.i, r.j) for r in self.reports if r.passed]


@dataclass(frozen=True)
class ArrangementCertificate:
    """Four pairs whose second image (after *images_swapped*) is collinear.

    .. attribute:: pairs

        Index pairs :math:`(i, j)`, :math:`i < j`.

    .. attribute:: signs

        Signs of :math:`\\det[v_i v_j e_2]` for any :math:`e_2` off the
        line of the *v*'s, in the order of *pairs*.

    .. attribute:: feasible

        Whether some :math:`e_1` realizes *signs* as
        :math:`\\det[u_i u_j e_1]`.
    """

    pairs: Tuple[Tuple[int, int], ...]
    signs: Tuple[int, ...]
    images_swapped: bool
    feasible: bool


@dataclass(frozen=True)
class SubsetCertificate:
    indices: Tuple[int, ...]
    decision: "Decision"


@dataclass(frozen=True, eq=False)
class Decision:
    """
    .. attribute:: status
    .. attribute:: witness
    .. attribute:: certificate
    .. attribute:: reason

        Short code for *Unknown* answers.

    .. attribute:: flags

        Notes on how the answer was obtained, e.g.
        ``"witness-search-exhausted"`` for a *Yes* without explicit witness.
    """

    status: DecisionStatus
    witness: Optional[Witness] = None
    certificate: Any = None
    reason: Optional[str] = None
    flags: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.status is DecisionStatus.NO and self.certificate is None:
            raise ValueError("a 'no' decision needs a certificate")

    @classmethod
    def yes(cls, witness: Optional[Witness] = None, certificate: Any = None,
            flags: Sequence[str] = ()) -> "Decision":
        return cls(DecisionStatus.YES, witness, certificate, None, tuple(flags))

    @classmethod
    def no(cls, certificate: Any) -> "Decision":
        return cls(DecisionStatus.NO, certificate=certificate)

    @classmethod
    def unknown(cls, reason: str, certificate: Any = None) -> "Decision":
        return cls(DecisionStatus.UNKNOWN, certificate=certificate, reason=reason)

    def __str__(self) -> str:
        extra = self.reason or ", ".join(self.flags)
        return f"{self.status.value}" + (f" ({extra})" if extra else "")


WITNESS_NOT_REQUESTED = "witness-not-requested"
WITNESS_EXHAUSTED = "witness-search-exhausted"

# }}}


# {{{ witness helpers

_RECONSTRUCTION_ERRORS = (
        NotFeasible, UpgradeInfeasible, IrregularPair, EpipolarViolation,
        GeometryError)


def try_witness(P: PairSet, X: np.ndarray) -> Optional[Witness]:
    """Return a verified witness built from the matrix *X*, or *None*."""
    actx = P.actx
    X = np.asarray(X).reshape(3, 3)
    if actx.rank(X) != 2:
        return None

    cand = FundamentalCandidate.from_matrix(X, actx)
    if not actx.is_zero(cand.residuals(P)):
        return None
    if not sign_table(cand, P).chiral_feasible:
        return None

    try:
        return Witness(cand, reconstruct_from_X(P, cand))
    except _RECONSTRUCTION_ERRORS as exc:
        logger.debug("candidate rejected during reconstruction: %s", exc)
        return None


def _try_swapped_witness(P: PairSet, X: np.ndarray,
        swapped: bool) -> Optional[Witness]:
    return try_witness(P, X.T if swapped else X)


def _small_points(actx: ArithmeticContext, radius: int = 3) -> Iterator[np.ndarray]:
    """Deterministic list of small rational points, lattice points first."""
    shifts = [(0, 0), (Fraction(1, 3), Fraction(1, 5))]
    for dx, dy in shifts:
        for r in range(radius + 1):
            for x in range(-r, r + 1):
                for y in range(-r, r + 1):
                    if max(abs(x), abs(y)) == r:
                        yield actx.array([x + dx, y + dy, 1])
    for x, y in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)]:
        yield actx.array([x, y, 0])


def _small_rationals(count: int) -> Iterator[Fraction]:
    yield Fraction(0)
    n = 1
    emitted = 1
    while emitted < count:
        for val in [Fraction(n), Fraction(-n), Fraction(1, n + 1),
                Fraction(-1, n + 1)]:
            yield val
            emitted += 1
        n += 1


def _pair_indices(indices: Sequence[int]) -> List[Tuple[int, int]]:
    return list(combinations(indices, 2))

# }}}


# {{{ cone construction (collinear images)

def _extremes(points: Sequence[np.ndarray],
        actx: ArithmeticContext) -> Tuple[np.ndarray, np.ndarray]:
    """The two outermost of a set of collinear affine points."""
    if len(points) == 1:
        return points[0], points[0] + actx.array([1, 0, 0])

    direction = points[1] - points[0]
    params = [(p - points[0]) @ direction for p in points]
    lo = min(range(len(points)), key=lambda i: params[i])
    hi = max(range(len(points)), key=lambda i: params[i])
    return points[lo], points[hi]


def _cone_matrix(P: PairSet, line_indices: Sequence[int],
        extra: Optional[int] = None) -> np.ndarray:
    r"""Return :math:`X = [t]_\times G` where *G* maps the outermost
    *u*'s of *line_indices* onto the outermost *v*'s, and *t* is the point
    at infinity of the *v*-line, outside the cone of the outermost *v*'s.
    With *extra*, *G* additionally maps :math:`u_{extra}` to
    :math:`v_{extra}`.
    """
    actx = P.actx
    u_a, u_b = _extremes([P.u[i] for i in line_indices], actx)
    v_l, v_r = _extremes([P.v[i] for i in line_indices], actx)

    if extra is None:
        src = np.column_stack([u_a, u_b, np.cross(u_a, u_b)])
        dst = np.column_stack([v_l, v_r, np.cross(v_l, v_r)])
    else:
        src = np.column_stack([u_a, u_b, P.u[extra]])
        dst = np.column_stack([v_l, v_r, P.v[extra]])

    G = dst @ actx.inv(src)
    t = v_r - v_l
    return skew(t) @ G

# }}}


# {{{ k <= 3

def _match_off_lines(P: PairSet, budget: int) -> Optional[Witness]:
    """Three pairs with non-collinear *u*'s: pick :math:`e_2` off all
    *v*-lines, match the chirotope with :math:`e_1`, and solve for the
    matrix with kernels :math:`(e_1, e_2)`.
    """
    actx = P.actx
    pairs = _pair_indices(range(3))
    for tries, e2 in enumerate(_small_points(actx)):
        if tries >= 10 * budget:
            break
        dets = [det3(P.v[i], P.v[j], e2) for i, j in pairs]
        if any(actx.sign(d) == 0 for d in dets):
            continue

        e1 = chirotope_match(*P.u, [actx.sign(d) for d in dets], actx=actx)
        sol = constrained_solutions(P, right=e1, left=e2)
        if len(sol) != 1:
            continue

        witness = try_witness(P, sol[0])
        if witness is not None:
            return witness

    return None


def _decide_small(P: PairSet, budget: int) -> Optional[Witness]:
    actx = P.actx
    r_u = rank_of_points(list(P.u), actx)
    r_v = rank_of_points(list(P.v), actx)

    if r_u <= 2 and r_v <= 2:
        return try_witness(P, _cone_matrix(P, range(P.k)))

    if r_u == 3:
        return _match_off_lines(P, budget)

    witness = _match_off_lines(P.swapped(), budget)
    if witness is None:
        return None
    return try_witness(P, witness.candidate.X.T)


def decide_k_le_3(P: PairSet, budget: Optional[int] = None) -> Decision:
    if not 1 <= P.k <= 3:
        raise ValueError(f"expected one to three pairs, got {P.k}")
    budget = get_witness_budget() if budget is None else budget

    witness = _decide_small(P, budget)
    if witness is None:
        return Decision.yes(flags=[WITNESS_EXHAUSTED])
    return Decision.yes(witness)

# }}}


# {{{ k = 4

def _doubly_collinear_triple(P: PairSet) -> Optional[Tuple[List[int], int]]:
    actx = P.actx
    for triple in combinations(range(4), 3):
        idx = list(triple)
        if (actx.sign(det3(*P.u[idx])) == 0
                and actx.sign(det3(*P.v[idx])) == 0):
            rest, = (m for m in range(4) if m not in triple)
            return idx, rest
    return None


def _e1_candidates(P: PairSet, triple: Sequence[int],
        sigma: Sequence[int]) -> Iterator[np.ndarray]:
    """Points realizing the chirotope *sigma* on the *u*'s of *triple*:
    the matched point first, then small perturbations of it.
    """
    actx = P.actx
    pairs = _pair_indices(triple)
    base = chirotope_match(*P.u[list(triple)], sigma, actx=actx)
    yield base

    for delta in [Fraction(1, 4), Fraction(1, 16)]:
        for offset in _small_points(actx, radius=1):
            e1 = base + actx.scalar(delta) * offset
            if all(actx.sign(det3(P.u[i], P.u[j], e1)) == s
                    for (i, j), s in zip(pairs, sigma)):
                yield e1


def _wall_walk(P: PairSet, budget: int) -> Optional[Witness]:
    """Equal rank three without a doubly collinear triple.

    Find *m* such that the other three *u*'s are in general position and
    :math:`v_m` is off their *v*-lines. The member :math:`X_0` of
    :math:`L_P` with kernels :math:`(e_1, v_m)` lies on the wall of
    :math:`v_m`; moving along the pencil of members with right kernel
    :math:`e_1` leaves the wall to one side or the other.
    """
    actx = P.actx
    for m in range(4):
        triple = [i for i in range(4) if i != m]
        if actx.sign(det3(*P.u[triple])) == 0:
            continue
        dets = [det3(P.v[i], P.v[j], P.v[m]) for i, j in _pair_indices(triple)]
        if any(actx.sign(d) == 0 for d in dets):
            continue
        sigma = [actx.sign(d) for d in dets]

        for e1 in _e1_candidates(P, triple, sigma):
            sol = constrained_solutions(P, right=e1, left=P.v[m])
            if len(sol) != 1:
                continue
            X0 = sol[0].reshape(3, 3)
            if actx.rank(X0) != 2:
                continue
            if not smooth_point_check(
                    FundamentalCandidate.from_matrix(X0, actx), P):
                continue

            pencil = constrained_solutions(P, right=e1)
            if len(pencil) != 2:
                continue
            Y = next(b.reshape(3, 3) for b in pencil
                    if not projectively_equal(b, X0, actx))

            witness = try_witness(P, X0)
            if witness is not None:
                return witness

            for n in range(budget):
                for sgn in (1, -1):
                    lam = actx.scalar(Fraction(sgn, 2**n))
                    witness = try_witness(P, X0 + lam * Y)
                    if witness is not None:
                        logger.debug("left the wall of v_%d at step 2^-%d",
                                m, n)
                        return witness

    return None


def _pencil_search(P: PairSet, budget: int) -> Optional[Witness]:
    """Generic fallback: scan pencils of members of :math:`L_P` with a
    fixed right kernel.
    """
    actx = P.actx
    for e1 in _small_points(actx):
        pencil = constrained_solutions(P, right=e1)
        if len(pencil) != 2:
            continue
        Xa, Xb = pencil
        witness = try_witness(P, Xb)
        if witness is not None:
            return witness
        for s in _small_rationals(budget):
            witness = try_witness(P, Xa + actx.scalar(s) * Xb)
            if witness is not None:
                return witness

    return None


def _decide_rank_mismatch(P: PairSet, budget: int) -> Decision:
    """One image of rank three, the other collinear.

    Any valid pair of epipoles has :math:`e_2` off the collinear image's
    line and :math:`e_1` off every line through two *u*'s, so the signs of
    :math:`\\det[v_i v_j e_2]` fix those of :math:`\\det[u_i u_j e_1]` up to a
    global flip. If no :math:`e_1` realizes them, there is no chiral
    reconstruction; otherwise every rank 2 member of the pencil with right
    kernel :math:`e_1` and left kernel off the line is a witness.
    """
    actx = P.actx
    swapped = rank_of_points(list(P.v), actx) == 3
    work = P.swapped() if swapped else P

    pairs = tuple(_pair_indices(range(4)))
    line = np.cross(work.v[0], work.v[1])
    signs = tuple(actx.sign(det3(work.v[i], work.v[j], line)) for i, j in pairs)

    rows = np.array([s * np.cross(work.u[i], work.u[j])
        for (i, j), s in zip(pairs, signs)])
    e1 = strictly_feasible_point(rows, actx)

    cert = ArrangementCertificate(pairs, signs, swapped, e1 is not None)
    if e1 is None:
        logger.info("sign vector %s of the collinear image is not realizable",
                signs)
        return Decision.no(cert)

    pencil = constrained_solutions(work, right=e1)
    if len(pencil) == 2:
        Xa, Xb = pencil
        for X in [Xb] + [Xa + actx.scalar(s) * Xb
                for s in _small_rationals(budget)]:
            X = X.reshape(3, 3)
            if actx.rank(X) != 2:
                continue
            t = FundamentalCandidate.from_matrix(X, actx).t
            if actx.sign(line @ t) == 0:
                continue
            witness = _try_swapped_witness(P, X, swapped)
            if witness is not None:
                return Decision.yes(witness, cert)

    return Decision.unknown("witness-construction-failed", cert)


def decide_k4(P: PairSet, budget: Optional[int] = None) -> Decision:
    if P.k != 4:
        raise ValueError(f"expected four pairs, got {P.k}")
    budget = get_witness_budget() if budget is None else budget

    actx = P.actx
    r_u = rank_of_points(list(P.u), actx)
    r_v = rank_of_points(list(P.v), actx)

    if r_u != r_v:
        return _decide_rank_mismatch(P, budget)

    if r_u == 2:
        witness = try_witness(P, _cone_matrix(P, range(4)))
    else:
        witness = None
        triple = _doubly_collinear_triple(P)
        if triple is not None:
            witness = try_witness(P, _cone_matrix(P, triple[0], triple[1]))

        if witness is None:
            witness = _wall_walk(P, budget)
        if witness is None:
            swapped = _wall_walk(P.swapped(), budget)
            if swapped is not None:
                witness = try_witness(P, swapped.candidate.X.T)
        if witness is None:
            witness = _pencil_search(P, budget)

    if witness is None:
        logger.warning("equal-rank four pairs: no explicit witness found")
        return Decision.yes(flags=[WITNESS_EXHAUSTED])
    return Decision.yes(witness)

# }}}


# {{{ k = 5

def _corner_walk(P: PairSet, i: int, j: int, X_c: np.ndarray,
        budget: int) -> Optional[Witness]:
    r"""Search near the corner :math:`W_{u_i} \cap W^{v_j}`.

    Members of :math:`L_P` are parametrized by their right kernel *e*.
    The wall :math:`W^{v_j}` maps to a curve through :math:`u_i`, with
    tangent :math:`d_c` read off the adjoint along the wall. Candidates
    :math:`e = u_i + \varepsilon (d_c + \eta d_\perp)` with both signs of
    :math:`\varepsilon` and :math:`\eta` cover the four local quadrants at
    the corner.
    """
    actx = P.actx
    u_i = P.u[i]

    try:
        pencil = wall_pencil(P, j, "v")
    except DegenerateWall:
        return None

    tangent = None
    for B in [pencil.Xa, pencil.Xb, pencil.Xa + pencil.Xb]:
        if projectively_equal(B, X_c, actx):
            continue
        M1 = adjoint3(X_c + B) - adjoint3(X_c) - adjoint3(B)
        d_c = M1 @ P.v[j]
        if actx.rank(np.column_stack([u_i, d_c])) == 2:
            tangent = d_c
            break
    if tangent is None:
        return None

    scale = max(abs(x) for x in tangent)
    d_c = tangent / scale
    d_perp = max((actx.array(e) for e in np.eye(3, dtype=np.int64)),
            key=lambda e: abs(det3(u_i, d_c, e)))

    for n in range(1, budget + 1):
        eta = actx.scalar(Fraction(1, 2**n))
        eps = actx.scalar(Fraction(1, 2**(2*n)))
        for s_eps in (1, -1):
            for s_eta in (1, -1):
                e = u_i + s_eps * eps * (d_c + s_eta * eta * d_perp)
                sol = constrained_solutions(P, right=e)
                if len(sol) != 1:
                    continue
                witness = try_witness(P, sol[0])
                if witness is not None:
                    logger.debug("witness near corner (%d, %d) at level %d",
                            i, j, n)
                    return witness

    return None


def decide_k5(P: PairSet, find_witness: bool = True,
        budget: Optional[int] = None) -> Decision:
    if P.k != 5:
        raise ValueError(f"expected five pairs, got {P.k}")
    budget = get_witness_budget() if budget is None else budget

    report = genericity_check(P)
    if not report.passed:
        logger.info("five pairs are not generic: %s", report.message)
        return Decision.unknown("non-generic", report)

    try:
        reports = tuple(corner_sign_tests(P))
    except DegenerateInput as exc:
        return Decision.unknown("non-generic", str(exc))

    cert = CornerCertificate(reports)
    passing = cert.passing
    if not passing:
        return Decision.no(cert)

    if not find_witness:
        return Decision.yes(certificate=cert, flags=[WITNESS_NOT_REQUESTED])

    with ProcessLogger(logger, f"witness search at {len(passing)} corners"):
        swapped = P.swapped()
        for i, j in passing:
            X_c = report.corners[i, j].candidate.X
            witness = _corner_walk(P, i, j, X_c, budget)
            if witness is None:
                alt = _corner_walk(swapped, j, i, X_c.T, budget)
                if alt is not None:
                    witness = try_witness(P, alt.candidate.X.T)
            if witness is not None:
                return Decision.yes(witness, cert)

    logger.warning("passing corners %s, but no explicit witness found", passing)
    return Decision.yes(certificate=cert, flags=[WITNESS_EXHAUSTED])

# }}}


# {{{ k >= 6

def _rational_roots(coeff_poly: Any) -> List[Fraction]:
    roots = []
    _, factors = coeff_poly.factor_list()
    for factor, _ in factors:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            root = -b / a
            roots.append(Fraction(int(root.p), int(root.q)))
    return sorted(roots)


def _line_search(P: PairSet, Xa: np.ndarray, Xb: np.ndarray,
        budget: int) -> Optional[Witness]:
    """Rank 2 members of the line through *Xa* and *Xb*: the rational roots
    of the cubic :math:`\\det(X_a + s X_b)`, and *Xb* itself if the cubic
    drops degree.
    """
    import sympy as sp

    actx = P.actx
    s = sp.Symbol("s")

    def to_sympy(x: Any) -> Any:
        f = actx.scalar(x)
        return sp.Rational(f.numerator, f.denominator)

    mat = sp.Matrix(3, 3, lambda r, c: to_sympy(Xa[r, c]) + s*to_sympy(Xb[r, c]))
    poly = sp.Poly(mat.det(), s)

    if poly.is_zero:
        candidates = [Xa + actx.scalar(val) * Xb for val in _small_rationals(budget)]
    else:
        candidates = [Xa + actx.scalar(r) * Xb for r in _rational_roots(poly)]
        if poly.degree() < 3:
            candidates.append(Xb)

    for X in candidates:
        witness = try_witness(P, X)
        if witness is not None:
            return witness
    return None


def _chord_search(P: PairSet, basis: np.ndarray,
        budget: int) -> Optional[Witness]:
    """Rational points of the plane cubic :math:`\\det X = 0` in a
    two-dimensional :math:`L_P`, generated by chords through the wall
    points.
    """
    actx = P.actx

    def det_at(z: np.ndarray) -> Any:
        return actx.det((z @ basis).reshape(3, 3))

    points: List[np.ndarray] = []
    seen = set()

    def add(z: np.ndarray) -> bool:
        key = tuple(actx.normalize(z))
        if key in seen:
            return False
        seen.add(key)
        points.append(z)
        return True

    for i in range(P.k):
        for side in ("u", "v"):
            sol = (constrained_solutions(P, right=P.u[i]) if side == "u"
                    else constrained_solutions(P, left=P.v[i]))
            if len(sol) != 1:
                continue
            z = actx.solve(basis.T, sol[0])
            if z is not None:
                add(z)

    max_points = len(points) + 10 * budget
    ia = 0
    while ia < len(points) and len(points) < max_points:
        for ib in range(ia):
            p, q = points[ia], points[ib]
            f_plus, f_minus = det_at(p + q), det_at(p - q)
            f12, f21 = (f_plus + f_minus) / 2, (f_plus - f_minus) / 2
            if actx.sign(f12) == 0 and actx.sign(f21) == 0:
                continue
            r = f12 * p - f21 * q
            if actx.is_zero(r) or not add(r):
                continue

            witness = try_witness(P, r @ basis)
            if witness is not None:
                return witness
        ia += 1

    return None


def _lp_witness_search(P: PairSet, budget: int) -> Optional[Witness]:
    lp = lp_basis(P)
    dim = lp.projective_dimension
    logger.info("searching L_P of projective dimension %d for a witness", dim)

    if dim == 0:
        return try_witness(P, lp.basis[0])
    if dim == 1:
        return _line_search(P, lp.basis[0].reshape(3, 3),
                lp.basis[1].reshape(3, 3), budget)
    if dim == 2:
        return _chord_search(P, lp.basis, budget)
    return None


def _map_subsets(P: PairSet,
        subsets: Sequence[Tuple[int, ...]]) -> Iterator[Decision]:
    def run(indices: Tuple[int, ...]) -> Decision:
        return decide_k5(P.subset(indices), find_witness=False)

    nthreads = get_thread_count()
    if nthreads == 1:
        return map(run, subsets)

    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=nthreads) as executor:
        return iter(list(executor.map(run, subsets)))


def decide_k_ge_6(P: PairSet, find_witness: bool = True,
        budget: Optional[int] = None) -> Decision:
    if P.k < 6:
        raise ValueError(f"expected at least six pairs, got {P.k}")
    budget = get_witness_budget() if budget is None else budget

    subsets = list(combinations(range(P.k), 5))
    skipped = 0
    with ProcessLogger(logger, f"checking {len(subsets)} five-pair subsets"):
        for indices, sub in zip(subsets, _map_subsets(P, subsets)):
            if sub.status is DecisionStatus.NO:
                return Decision.no(SubsetCertificate(indices, sub))
            if sub.status is DecisionStatus.UNKNOWN:
                skipped += 1

    if skipped:
        logger.info("%d of %d subsets were not generic", skipped, len(subsets))

    if not find_witness:
        return Decision.unknown("necessary conditions passed; "
                "witness not requested")

    with ProcessLogger(logger, "witness search in L_P"):
        witness = _lp_witness_search(P, budget)

    if witness is None:
        return Decision.unknown(
                "necessary conditions passed; no witness found within budget")
    return Decision.yes(witness)

# }}}


def decide(P: PairSet, find_witness: bool = True,
        budget: Optional[int] = None) -> Decision:
    """Dispatch on the number of pairs.

    :arg find_witness: if *False*, skip the witness construction where the
        answer does not depend on it (five pairs and the subset sweep).
    :arg budget: witness search budget; defaults to
        ``CHIRALITY_WITNESS_BUDGET`` or 50.
    """
    if P.k == 0:
        raise ValueError("need at least one point pair")

    if P.k <= 3:
        result = decide_k_le_3(P, budget)
    elif P.k == 4:
        result = decide_k4(P, budget)
    elif P.k == 5:
        result = decide_k5(P, find_witness, budget)
    else:
        result = decide_k_ge_6(P, find_witness, budget)

    logger.info("decision for %d pairs: %s", P.k, result)
    return result

# vim: foldmethod=marker
