"""
.. currentmodule:: chirality

The cubic surface of five pairs
-------------------------------

For five generic pairs, :math:`L_P` is a projective 3-space and the rank 2
members form a cubic surface in it. This module computes the classical
configuration on that surface: the walls of the pairs are lines, the
kernels along a wall trace a conic in the other image, a sixth point pair
is forced by the five given ones, and the twelve walls of all six pairs
form a double six among the 27 lines of the surface.

Arithmetic is exact throughout the line computations; the conic and
determinantal layers also accept a floating point context.

.. autoclass:: DeterminantalRepresentation
.. autofunction:: determinantal_rep

.. autoclass:: Conic
.. autofunction:: fit_conic
.. autofunction:: wall_conic
.. autofunction:: fourth_intersection
.. autofunction:: sixth_point_pair

.. autoclass:: SurfaceLine
.. autofunction:: wall_line
.. autofunction:: residual_line
.. autoclass:: DoubleSix
.. autofunction:: schlafli_verify

.. autoclass:: RegionReport
.. autofunction:: region_boundary_report

.. autoexception:: DimensionError
.. autoexception:: DegeneratePencil
.. autoexception:: PencilDegenerate
.. autoexception:: DegenerateConics
.. autoexception:: FactorizationError
.. autoexception:: IncidenceViolation
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
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from pytools import ProcessLogger

from chirality.arithmetic import ArithmeticContext
from chirality.epipolar import (
    RankError, constrained_solutions, data_matrix, kernels, lp_basis,
    wall_pencil)
from chirality.geometry import PairSet, projectively_equal
from chirality.inequalities import CornerReport, corner_sign_tests


logger = logging.getLogger(__name__)


class DimensionError(ValueError):
    pass


class DegeneratePencil(ValueError):
    """A wall conic is not uniquely determined by its samples."""


class PencilDegenerate(ValueError):
    """Two conics do not meet in a single fourth point."""


class DegenerateConics(ValueError):
    pass


class FactorizationError(ArithmeticError):
    """The cubic restricted to a tritangent plane does not split off the
    expected linear factors.
    """


class IncidenceViolation(RuntimeError):
    pass


def _require_exact(actx: ArithmeticContext, what: str) -> None:
    if not actx.exact:
        raise ValueError(f"{what} requires an exact arithmetic context, "
                f"got '{actx.name}'")


def _to_sympy(actx: ArithmeticContext, x: Any) -> Any:
    import sympy as sp
    f = actx.scalar(x)
    return sp.Rational(f.numerator, f.denominator)


# {{{ determinantal representation

@dataclass(frozen=True, eq=False)
class DeterminantalRepresentation:
    """The matrix :math:`M(z) = z_0 M_0 + z_1 M_1 + z_2 M_2 + z_3 M_3`
    whose determinant is the cubic surface.

    .. attribute:: basis

        Shape ``(4, 9)``, the flattened :math:`M_i`.

    .. automethod:: matrix
    .. automethod:: evaluate
    .. automethod:: coordinates
    .. automethod:: cubic
    """

    basis: np.ndarray
    actx: ArithmeticContext = field(repr=False)

    def matrices(self) -> List[np.ndarray]:
        return [b.reshape(3, 3) for b in self.basis]

    def matrix(self, z: Sequence[Any]) -> np.ndarray:
        return (self.actx.array(list(z)) @ self.basis).reshape(3, 3)

    def evaluate(self, z: Sequence[Any]) -> Any:
        return self.actx.det(self.matrix(z))

    def coordinates(self, X: np.ndarray) -> np.ndarray:
        """Coordinates of the member *X* of :math:`L_P` in :attr:`basis`."""
        z = self.actx.solve(self.basis.T, np.asarray(X).ravel())
        if z is None:
            raise ValueError("matrix is not a member of L_P")
        return z

    def cubic(self) -> Any:
        """:math:`\\det M(z)` as a :class:`sympy.Poly` in ``z0, ..., z3``."""
        import sympy as sp

        _require_exact(self.actx, "the symbolic cubic")
        zs = sp.symbols("z0:4")
        mats = self.matrices()
        mat = sp.Matrix(3, 3, lambda r, c: sum(
            zi * _to_sympy(self.actx, M[r, c]) for zi, M in zip(zs, mats)))
        return sp.Poly(mat.det(method="berkowitz"), *zs)


def determinantal_rep(P: PairSet) -> DeterminantalRepresentation:
    """The basis comes from the reduced echelon form of the data matrix, so
    it is reproducible for identical input.
    """
    lp = lp_basis(P)
    if lp.projective_dimension != 3:
        raise DimensionError(
                f"L_P has projective dimension {lp.projective_dimension}, "
                "expected 3")
    return DeterminantalRepresentation(lp.basis, P.actx)

# }}}


# {{{ conics

def veronese(p: np.ndarray) -> np.ndarray:
    x, y, z = p
    return np.array([x*x, x*y, y*y, x*z, y*z, z*z])


@dataclass(frozen=True, eq=False)
class Conic:
    """Zero set of :math:`a x^2 + b xy + c y^2 + d xz + e yz + f z^2`.

    .. attribute:: coeffs

        :math:`(a, b, c, d, e, f)`.

    .. attribute:: label
    """

    coeffs: np.ndarray
    actx: ArithmeticContext = field(repr=False)
    label: str = ""

    @property
    def matrix(self) -> np.ndarray:
        a, b, c, d, e, f = self.coeffs
        half = self.actx.scalar(1) / 2
        return np.array([
            [a, half*b, half*d],
            [half*b, c, half*e],
            [half*d, half*e, f]])

    def evaluate(self, p: np.ndarray) -> Any:
        return veronese(p) @ self.coeffs

    def bilinear(self, p: np.ndarray, q: np.ndarray) -> Any:
        return p @ self.matrix @ q

    def contains(self, p: np.ndarray) -> bool:
        return self.actx.sign(self.evaluate(p)) == 0


def fit_conic(points: Sequence[np.ndarray], actx: ArithmeticContext,
        label: str = "") -> Conic:
    """The unique conic through *points*."""
    system = np.array([veronese(p) for p in points])
    kernel = actx.nullspace(system)
    if kernel.shape[1] != 1:
        raise DegeneratePencil(
                f"{len(points)} points lie on a {kernel.shape[1]}-dimensional "
                "family of conics")
    return Conic(actx.normalize(kernel[:, 0]), actx, label)


_PENCIL_SAMPLES = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2),
        (2, -1), (1, 3)]


def wall_conic(P: PairSet, i: int, side: str) -> Conic:
    """The curve traced in the opposite image by the kernels along a wall.

    For ``side == "u"``, members of :math:`W_{u_i}` have :math:`u_i` as
    right kernel; their left kernels trace :math:`C^i` in the second image,
    through every :math:`v_j` with :math:`j \\neq i`. For ``side == "v"``,
    the right kernels along :math:`W^{v_i}` trace :math:`C_i` in the first
    image, through every :math:`u_j` with :math:`j \\neq i`.
    """
    actx = P.actx
    pencil = wall_pencil(P, i, side)

    samples = []
    for s, sigma in _PENCIL_SAMPLES:
        X = pencil.point(actx.scalar(s), actx.scalar(sigma))
        try:
            t, e1 = kernels(X, actx)
        except RankError:
            continue
        samples.append(t if side == "u" else e1)

    label = f"C^{i + 1}" if side == "u" else f"C_{i + 1}"
    conic = fit_conic(samples, actx, label)

    known = P.v if side == "u" else P.u
    for j in range(P.k):
        if j != i and not conic.contains(known[j]):
            raise DegeneratePencil(
                    f"{label} misses the data point of pair {j}")

    return conic


def fourth_intersection(ca: Conic, cb: Conic,
        known: Sequence[np.ndarray]) -> np.ndarray:
    """The fourth common point of two conics sharing the three *known*
    points.

    The member of the pencil :math:`\\lambda C_a + \\mu C_b` in which
    :math:`p_1` and :math:`p_2` are conjugate contains the line
    :math:`p_1 p_2`; its other line passes through :math:`p_3` and the
    fourth point. Doing the same for :math:`p_1, p_3` gives a second line
    through the fourth point.
    """
    actx = ca.actx
    p1, p2, p3 = known

    def residual_line(pa: np.ndarray, pb: np.ndarray,
            pc: np.ndarray) -> np.ndarray:
        D = cb.bilinear(pa, pb) * ca.matrix - ca.bilinear(pa, pb) * cb.matrix
        if actx.is_zero(D):
            raise PencilDegenerate(f"{ca.label} and {cb.label} coincide")
        line = D @ pc
        if actx.is_zero(line):
            raise PencilDegenerate(
                    "degenerate pencil member has no residual line")
        return line

    m = residual_line(p1, p2, p3)
    m_prime = residual_line(p1, p3, p2)
    p4 = np.cross(m, m_prime)
    if actx.is_zero(p4):
        raise PencilDegenerate("residual lines coincide")

    if not (ca.contains(p4) and cb.contains(p4)):
        raise PencilDegenerate(
                f"fourth point is not on both {ca.label} and {cb.label}")
    if any(projectively_equal(p4, p, actx) for p in known):
        raise PencilDegenerate("conics are tangent at a known point")

    return p4


def _affine_normalized(p: np.ndarray, actx: ArithmeticContext) -> np.ndarray:
    if actx.sign(p[2]) == 0:
        return actx.normalize(p)
    return p / p[2]


def sixth_point_pair(P: PairSet) -> Tuple[np.ndarray, np.ndarray]:
    """Return :math:`(u_0, v_0)`, scaled to last coordinate one when finite.

    :math:`v_0` is the fourth common point of :math:`C^1` and :math:`C^2`,
    and :math:`u_0` that of :math:`C_1` and :math:`C_2`.
    """
    if P.k != 5:
        raise ValueError(f"the sixth point pair needs five pairs, got {P.k}")

    actx = P.actx
    try:
        v0 = fourth_intersection(
                wall_conic(P, 0, "u"), wall_conic(P, 1, "u"), list(P.v[2:]))
        u0 = fourth_intersection(
                wall_conic(P, 0, "v"), wall_conic(P, 1, "v"), list(P.u[2:]))
    except (PencilDegenerate, DegeneratePencil) as exc:
        raise DegenerateConics(str(exc)) from exc

    data = data_matrix(P)
    extra = np.outer(v0, u0).ravel()
    if actx.rank(np.vstack([data, extra])) != actx.rank(data):
        raise DegenerateConics(
                "v0 u0^T is not in the span of the data matrices")

    return _affine_normalized(u0, actx), _affine_normalized(v0, actx)

# }}}


# {{{ lines on the surface

@dataclass(frozen=True, eq=False)
class SurfaceLine:
    """A line on the cubic surface.

    .. attribute:: label
    .. attribute:: kind

        ``"u"`` or ``"v"`` for walls, ``"residual"`` otherwise.

    .. attribute:: indices

        Pair indices in the six-pair numbering, where 0 is the sixth pair.

    .. attribute:: basis

        Shape ``(2, 4)``; two points spanning the line, in coordinates of
        :class:`DeterminantalRepresentation`.
    """

    label: str
    kind: str
    indices: Tuple[int, ...]
    basis: np.ndarray

    def sample_points(self) -> List[np.ndarray]:
        a, b = self.basis
        return [a, b, a + b, a - 2*b]

    def meets(self, other: "SurfaceLine", actx: ArithmeticContext) -> bool:
        return actx.rank(np.vstack([self.basis, other.basis])) <= 3

    def same_as(self, other: "SurfaceLine", actx: ArithmeticContext) -> bool:
        return actx.rank(np.vstack([self.basis, other.basis])) == 2


def _six_pairs(P: PairSet,
        sixth: Optional[Tuple[np.ndarray, np.ndarray]] = None
        ) -> Tuple[np.ndarray, np.ndarray]:
    """Points of all six pairs; row 0 is the sixth pair, row *l* is data
    pair *l - 1*.
    """
    u0, v0 = sixth_point_pair(P) if sixth is None else sixth
    return np.vstack([u0, P.u]), np.vstack([v0, P.v])


def _line_from_rows(rep: DeterminantalRepresentation, rows: np.ndarray,
        label: str, kind: str, indices: Tuple[int, ...]) -> SurfaceLine:
    if len(rows) != 2:
        raise IncidenceViolation(
                f"{label} spans a {len(rows) - 1}-dimensional space, "
                "expected a line")
    return SurfaceLine(label, kind, indices,
            np.array([rep.coordinates(r) for r in rows]))


def wall_line(P: PairSet, rep: DeterminantalRepresentation, point: np.ndarray,
        side: str, index: int) -> SurfaceLine:
    """The wall of *point*, which need not be a data point, as a line."""
    if side == "u":
        rows = constrained_solutions(P, right=point)
        label = f"W_u{index}"
    else:
        rows = constrained_solutions(P, left=point)
        label = f"W^v{index}"
    return _line_from_rows(rep, rows, label, side, (index,))


def residual_line(P: PairSet, i: int, j: int,
        sixth: Optional[Tuple[np.ndarray, np.ndarray]] = None,
        rep: Optional[DeterminantalRepresentation] = None) -> SurfaceLine:
    """The third line :math:`W_i^j` in the plane spanned by :math:`W_{u_i}`
    and :math:`W^{v_j}`, in the six-pair numbering.

    The plane is parametrized as :math:`y_0 C + y_1 A + y_2 B` with *C* the
    corner, *A* on :math:`W_{u_i}` and *B* on :math:`W^{v_j}`. The cubic
    restricted to it is :math:`y_1 y_2 \\ell(y)`, and :math:`\\ell = 0` is
    the residual line.
    """
    import sympy as sp

    actx = P.actx
    _require_exact(actx, "residual lines")
    if i == j:
        raise ValueError(f"no residual line for ({i}, {i})")

    rep = determinantal_rep(P) if rep is None else rep
    U6, V6 = _six_pairs(P, sixth)

    corner_rows = constrained_solutions(P, right=U6[i], left=V6[j])
    if len(corner_rows) != 1:
        raise FactorizationError(f"corner ({i}, {j}) is not a single point")
    C = corner_rows[0]

    def off_corner(rows: np.ndarray) -> np.ndarray:
        for row in rows:
            if not projectively_equal(row, C, actx):
                return row
        raise FactorizationError(f"wall through corner ({i}, {j}) is a point")

    A = off_corner(constrained_solutions(P, right=U6[i]))
    B = off_corner(constrained_solutions(P, left=V6[j]))
    plane = np.array([C, A, B])

    ys = sp.symbols("y0:3")
    mat = sp.Matrix(3, 3, lambda r, c: sum(
        y * _to_sympy(actx, row[3*r + c]) for y, row in zip(ys, plane)))
    cubic = sp.Poly(mat.det(method="berkowitz"), *ys)

    quotient, remainder = sp.div(cubic, sp.Poly(ys[1] * ys[2], *ys))
    if not remainder.is_zero:
        raise FactorizationError(
                f"restricted cubic at ({i}, {j}) is not divisible by its walls")
    if quotient.is_zero or quotient.total_degree() != 1:
        raise FactorizationError(
                f"restricted cubic at ({i}, {j}) has no residual linear factor")

    form = actx.array([Fraction(int(c.p), int(c.q))
        for c in (quotient.coeff_monomial(y) for y in ys)])
    line_coeffs = actx.nullspace(form.reshape(1, 3)).T
    rows = line_coeffs @ plane

    return _line_from_rows(rep, rows, f"W_{i}^{j}", "residual", (i, j))


@dataclass(frozen=True, eq=False)
class DoubleSix:
    """The 27 lines of the cubic surface of five generic pairs.

    .. attribute:: u_walls
    .. attribute:: v_walls
    .. attribute:: residual

        Map from *(i, j)*, :math:`i < j`, to :math:`W_i^j`.

    .. attribute:: incidence

        Boolean ``(27, 27)`` matrix over :attr:`lines`.
    """

    u_walls: Tuple[SurfaceLine, ...]
    v_walls: Tuple[SurfaceLine, ...]
    residual: Dict[Tuple[int, int], SurfaceLine]
    incidence: np.ndarray
    sixth: Tuple[np.ndarray, np.ndarray]

    @property
    def lines(self) -> List[SurfaceLine]:
        return (list(self.u_walls) + list(self.v_walls)
                + [self.residual[key] for key in sorted(self.residual)])


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise IncidenceViolation(message)


def schlafli_verify(P: PairSet) -> DoubleSix:
    """Assemble the walls of all six pairs and the 15 residual lines, and
    check the double six incidences exactly.
    """
    actx = P.actx
    _require_exact(actx, "the double six")

    with ProcessLogger(logger, "assembling the 27 lines"):
        rep = determinantal_rep(P)
        sixth = sixth_point_pair(P)
        U6, V6 = _six_pairs(P, sixth)

        u_walls = tuple(wall_line(P, rep, U6[i], "u", i) for i in range(6))
        v_walls = tuple(wall_line(P, rep, V6[i], "v", i) for i in range(6))

        residual = {}
        for i, j in combinations(range(6), 2):
            line = residual_line(P, i, j, sixth, rep)
            _check(line.same_as(residual_line(P, j, i, sixth, rep), actx),
                    f"W_{i}^{j} and W_{j}^{i} differ")
            residual[i, j] = line

    lines = list(u_walls) + list(v_walls) + [residual[k] for k in sorted(residual)]
    _check(len(lines) == 27, f"expected 27 lines, got {len(lines)}")

    n = len(lines)
    incidence = np.zeros((n, n), dtype=bool)
    for a, b in combinations(range(n), 2):
        _check(not lines[a].same_as(lines[b], actx),
                f"{lines[a].label} and {lines[b].label} coincide")
        incidence[a, b] = incidence[b, a] = lines[a].meets(lines[b], actx)

    for a, b in combinations(range(6), 2):
        _check(not incidence[a, b], f"u-walls {a} and {b} meet")
        _check(not incidence[6 + a, 6 + b], f"v-walls {a} and {b} meet")

    for a in range(6):
        for b in range(6):
            _check(incidence[a, 6 + b] == (a != b),
                    f"u-wall {a} and v-wall {b} violate the double six pattern")

    for a, line in enumerate(lines):
        _check(incidence[a].sum() == 10,
                f"{line.label} meets {incidence[a].sum()} lines, expected 10")
        for z in line.sample_points():
            _check(actx.sign(rep.evaluate(z)) == 0,
                    f"{line.label} is not on the surface")

    logger.info("double six verified")
    return DoubleSix(u_walls, v_walls, residual, incidence, sixth)

# }}}


# {{{ chiral region boundary

@dataclass(frozen=True, eq=False)
class RegionReport:
    """Boundary conics of the region of allowed epipoles near each passing
    corner.

    .. attribute:: passing

        Passing corners *(i, j)*.

    .. attribute:: image1

        Map from *i* to the *j* with a passing corner: near :math:`u_i` the
        region is bounded by the conics :math:`C_j`.

    .. attribute:: image2

        Map from *j* to the *i* with a passing corner: near :math:`v_j` the
        region is bounded by the conics :math:`C^i`.

    .. attribute:: conics

        The conics used, keyed by label.
    """

    passing: Tuple[Tuple[int, int], ...]
    image1: Dict[int, Tuple[int, ...]]
    image2: Dict[int, Tuple[int, ...]]
    conics: Dict[str, Conic]

    @property
    def is_empty(self) -> bool:
        return not self.passing

    def labels(self) -> Dict[str, Dict[int, List[str]]]:
        return {
                "image1": {i: [f"C_{j + 1}" for j in js]
                    for i, js in self.image1.items()},
                "image2": {j: [f"C^{i + 1}" for i in is_]
                    for j, is_ in self.image2.items()},
                }


def region_boundary_report(P: PairSet,
        reports: Optional[Sequence[CornerReport]] = None) -> RegionReport:
    if reports is None:
        reports = corner_sign_tests(P)

    passing = tuple((r.i, r.j) for r in reports if r.passed)

    image1: Dict[int, List[int]] = {}
    image2: Dict[int, List[int]] = {}
    for i, j in passing:
        image1.setdefault(i, []).append(j)
        image2.setdefault(j, []).append(i)

    conics = {}
    for j in sorted({j for _, j in passing}):
        conic = wall_conic(P, j, "v")
        conics[conic.label] = conic
    for i in sorted({i for i, _ in passing}):
        conic = wall_conic(P, i, "u")
        conics[conic.label] = conic

    return RegionReport(
            passing,
            {i: tuple(sorted(js)) for i, js in sorted(image1.items())},
            {j: tuple(sorted(is_)) for j, is_ in sorted(image2.items())},
            conics)

# }}}

# vim: foldmethod=marker
