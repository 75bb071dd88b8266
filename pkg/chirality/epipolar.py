"""
.. currentmodule:: chirality

The epipolar linear space
-------------------------

A pair :math:`(u, v)` imposes the linear condition :math:`v^T X u = 0` on
3x3 matrices *X*. Flattening *X* row-major, this is the inner product of
*X* with :math:`v u^T`. The common solutions of all pairs of a
:class:`~chirality.PairSet` form the linear space :math:`L_P`; its rank-2
members are the fundamental matrices of the pairs.

.. autofunction:: data_matrix
.. autoclass:: LPBasis
.. autofunction:: lp_basis
.. autofunction:: constrained_solutions

.. autofunction:: adjoint3
.. autofunction:: kernels
.. autoclass:: FundamentalCandidate
.. autofunction:: is_regular
.. autofunction:: is_p_regular

Walls and corners
^^^^^^^^^^^^^^^^^

.. autoclass:: WallPencil
.. autofunction:: wall_pencil
.. autofunction:: wall_corner_parameters
.. autoclass:: Corner
.. autofunction:: corner
.. autofunction:: smooth_point_check
.. autoclass:: GenericityReport
.. autofunction:: genericity_check
.. autofunction:: irreducibility_hint_k4

.. autoexception:: RankError
.. autoexception:: EpipolarViolation
.. autoexception:: DegenerateCorner
.. autoexception:: DegenerateWall
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
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from chirality.arithmetic import ArithmeticContext, Scalar, resolve
from chirality.geometry import (
    GeometryError, PairSet, det3, homography_from_correspondences,
    projectively_equal, skew)


logger = logging.getLogger(__name__)


# {{{ exceptions

class RankError(ValueError):
    pass


class EpipolarViolation(ValueError):
    pass


class DegenerateCorner(ValueError):
    pass


class DegenerateWall(ValueError):
    pass

# }}}


# {{{ linear conditions on 3x3 matrices

def data_matrix(P: PairSet) -> np.ndarray:
    """The ``(k, 9)`` matrix whose row *i* is the flattening of
    :math:`v_i u_i^T`.
    """
    if P.k == 0:
        return P.actx.zeros((0, 9))
    return np.array([np.outer(v, u).ravel() for u, v in P])


def right_kernel_rows(r: np.ndarray, actx: ArithmeticContext) -> np.ndarray:
    """Rows expressing :math:`X r = 0` on the flattening of *X*."""
    rows = actx.zeros((3, 9))
    for a in range(3):
        rows[a, 3*a:3*a+3] = r
    return rows


def left_kernel_rows(l: np.ndarray, actx: ArithmeticContext) -> np.ndarray:
    """Rows expressing :math:`l^T X = 0` on the flattening of *X*."""
    rows = actx.zeros((3, 9))
    for c in range(3):
        for a in range(3):
            rows[c, 3*a + c] = l[a]
    return rows


def constraint_matrix(P: PairSet,
        right: Optional[np.ndarray] = None,
        left: Optional[np.ndarray] = None) -> np.ndarray:
    actx = P.actx
    blocks = [data_matrix(P)]
    if right is not None:
        blocks.append(right_kernel_rows(right, actx))
    if left is not None:
        blocks.append(left_kernel_rows(left, actx))
    return np.vstack(blocks)


def constrained_solutions(P: PairSet,
        right: Optional[np.ndarray] = None,
        left: Optional[np.ndarray] = None) -> np.ndarray:
    """Basis (as rows of 9-vectors) of the members *X* of :math:`L_P` with
    ``X @ right == 0`` and ``left @ X == 0``, for those conditions given.
    """
    return P.actx.nullspace(constraint_matrix(P, right, left)).T


@dataclass(frozen=True, eq=False)
class LPBasis:
    """
    .. attribute:: basis

        Array of shape ``(d, 9)``; each row is a flattened member of
        :math:`L_P`.

    .. attribute:: codim

        The rank of the data matrix. Less than *k* for degenerate data.

    .. autoattribute:: projective_dimension
    .. automethod:: point
    """

    basis: np.ndarray
    codim: int

    @property
    def projective_dimension(self) -> int:
        return len(self.basis) - 1

    def matrices(self) -> List[np.ndarray]:
        return [b.reshape(3, 3) for b in self.basis]

    def point(self, coeffs: np.ndarray) -> np.ndarray:
        return (np.asarray(coeffs) @ self.basis).reshape(3, 3)


def lp_basis(P: PairSet) -> LPBasis:
    if P.k < 1:
        raise ValueError("need at least one point pair")

    data = data_matrix(P)
    return LPBasis(P.actx.nullspace(data).T, P.actx.rank(data))

# }}}


# {{{ adjoint and kernels

def adjoint3(X: np.ndarray) -> np.ndarray:
    """The transposed cofactor matrix. Its rows are the pairwise cross
    products of the columns of *X*.
    """
    x1, x2, x3 = X[:, 0], X[:, 1], X[:, 2]
    return np.array([np.cross(x2, x3), np.cross(x3, x1), np.cross(x1, x2)])


def kernels(X: np.ndarray,
        actx: Optional[ArithmeticContext] = None
        ) -> Tuple[np.ndarray, np.ndarray]:
    """Return *(t, e1)* with :math:`t^T X = 0` and :math:`X e_1 = 0`.

    *t* is the first nonzero row of :func:`adjoint3`, and
    :math:`e_1 = \\operatorname{adj}(X) t`, which fixes the relative sign of
    the two kernel vectors.
    """
    actx = resolve(actx)
    rank = actx.rank(X)
    if rank != 2:
        raise RankError(f"kernels need a rank 2 matrix, got rank {rank}")

    adj = adjoint3(X)
    for row in adj:
        if not actx.is_zero(row):
            return row, adj @ row

    raise AssertionError("rank 2 matrix with vanishing adjoint")


@dataclass(frozen=True, eq=False)
class FundamentalCandidate:
    """A rank 2 matrix with its signed kernel pair.

    .. attribute:: X
    .. attribute:: t

        Left kernel representative, :math:`t^T X = 0`.

    .. attribute:: e1

        Right kernel representative, :math:`\\operatorname{adj}(X) t`.

    .. automethod:: from_matrix
    .. automethod:: flipped
    .. automethod:: residuals
    .. automethod:: check_epipolar
    """

    X: np.ndarray
    t: np.ndarray
    e1: np.ndarray
    actx: ArithmeticContext = field(repr=False)

    @classmethod
    def from_matrix(cls, X: np.ndarray,
            actx: Optional[ArithmeticContext] = None) -> "FundamentalCandidate":
        actx = resolve(actx)
        X = np.asarray(X)
        if X.shape != (3, 3):
            X = X.reshape(3, 3)
        t, e1 = kernels(X, actx)
        return cls(X, t, e1, actx)

    @property
    def rank(self) -> int:
        return 2

    def flipped(self) -> "FundamentalCandidate":
        """The same matrix with the kernel representatives negated."""
        return FundamentalCandidate(self.X, -self.t, -self.e1, self.actx)

    def scaled(self, mu: Scalar) -> "FundamentalCandidate":
        return FundamentalCandidate.from_matrix(
                self.actx.scalar(mu) * self.X, self.actx)

    def transposed(self) -> "FundamentalCandidate":
        return FundamentalCandidate.from_matrix(self.X.T, self.actx)

    def residuals(self, P: PairSet) -> np.ndarray:
        return np.array([v @ self.X @ u for u, v in P])

    def check_epipolar(self, P: PairSet) -> None:
        for i, res in enumerate(self.residuals(P)):
            if self.actx.sign(res) != 0:
                raise EpipolarViolation(
                        f"pair {i} violates the epipolar equation: "
                        f"v^T X u = {res}")


def is_regular(cand: FundamentalCandidate,
        u: np.ndarray, v: np.ndarray) -> bool:
    """*True* if *u* spans the right kernel exactly when *v* spans the left
    kernel.
    """
    actx = cand.actx
    res = v @ cand.X @ u
    if actx.sign(res) != 0:
        raise EpipolarViolation(f"v^T X u = {res} does not vanish")

    return actx.is_zero(cand.X @ u) == actx.is_zero(v @ cand.X)


def is_p_regular(cand: FundamentalCandidate, P: PairSet) -> bool:
    return all(is_regular(cand, u, v) for u, v in P)

# }}}


# {{{ walls

_SIDES = ("u", "v")


@dataclass(frozen=True, eq=False)
class WallPencil:
    """The projective line of members of :math:`L_P` that have a given
    point in their right kernel (``side == "u"``) or left kernel
    (``side == "v"``).

    .. attribute:: index
    .. attribute:: side
    .. attribute:: Xa
    .. attribute:: Xb
    .. automethod:: point
    """

    index: int
    side: str
    Xa: np.ndarray
    Xb: np.ndarray

    def point(self, s: Scalar, sigma: Scalar) -> np.ndarray:
        return s * self.Xa + sigma * self.Xb

    @property
    def label(self) -> str:
        return f"W_u{self.index}" if self.side == "u" else f"W^v{self.index}"


def wall_pencil_through(P: PairSet, point: np.ndarray, side: str,
        index: int = -1) -> WallPencil:
    """Wall of *point* inside :math:`L_P`, which need not be a data point."""
    if side not in _SIDES:
        raise ValueError(f"side must be 'u' or 'v', got '{side}'")

    if side == "u":
        sol = constrained_solutions(P, right=point)
    else:
        sol = constrained_solutions(P, left=point)

    if len(sol) != 2:
        raise DegenerateWall(
                f"wall {side}_{index} has projective dimension {len(sol) - 1}, "
                "expected a line")

    return WallPencil(index, side, sol[0].reshape(3, 3), sol[1].reshape(3, 3))


def wall_pencil(P: PairSet, i: int, side: str) -> WallPencil:
    point = P.u[i] if side == "u" else P.v[i]
    return wall_pencil_through(P, point, side, i)


def wall_corner_parameters(pencil: WallPencil, P: PairSet
        ) -> Dict[int, Tuple[Scalar, Scalar]]:
    """Map each *j* other than the wall's index to the parameters
    :math:`(s, \\sigma)` at which the wall meets the opposite wall of *j*.
    """
    actx = P.actx
    result = {}
    for j in range(P.k):
        if j == pencil.index:
            continue
        if pencil.side == "u":
            mat = np.column_stack([P.v[j] @ pencil.Xa, P.v[j] @ pencil.Xb])
        else:
            mat = np.column_stack([pencil.Xa @ P.u[j], pencil.Xb @ P.u[j]])

        kernel = actx.nullspace(mat)
        if kernel.shape[1] != 1:
            raise DegenerateWall(
                    f"{pencil.label} meets the wall of pair {j} in a "
                    f"{kernel.shape[1] - 1}-dimensional set")
        result[j] = (kernel[0, 0], kernel[1, 0])

    return result

# }}}


# {{{ corners

@dataclass(frozen=True, eq=False)
class Corner:
    """The member of :math:`L_P` with :math:`X u_i = 0` and
    :math:`v_j^T X = 0`.
    """

    i: int
    j: int
    candidate: FundamentalCandidate


def corner_matrix(P: PairSet, right: np.ndarray, left: np.ndarray,
        label: str = "corner") -> np.ndarray:
    sol = constrained_solutions(P, right=right, left=left)
    if len(sol) != 1:
        raise DegenerateCorner(
                f"{label}: solution space has dimension {len(sol)}, expected 1")

    X = sol[0].reshape(3, 3)
    rank = P.actx.rank(X)
    if rank != 2:
        raise DegenerateCorner(f"{label}: solution has rank {rank}, expected 2")

    return X


def corner(P: PairSet, i: int, j: int, cross_check: bool = True) -> Corner:
    """Solve for the corner :math:`W_{u_i} \\cap W^{v_j}` exactly.

    With *cross_check*, compare with :math:`[v_j]_\\times H`, where *H* is the
    homography taking :math:`u_i` to :math:`v_j` and the remaining three
    :math:`u_l` to :math:`v_l`.
    """
    if P.k != 5:
        raise ValueError(f"corners are defined for five pairs, got {P.k}")
    if i == j:
        raise ValueError(f"corner ({i}, {i}) does not exist: the walls "
                "of a pair are disjoint")

    actx = P.actx
    X = corner_matrix(P, P.u[i], P.v[j], f"corner ({i}, {j})")

    if cross_check:
        rest = [l for l in range(P.k) if l not in (i, j)]
        try:
            H = homography_from_correspondences(
                    [P.u[i]] + [P.u[l] for l in rest],
                    [P.v[j]] + [P.v[l] for l in rest], actx)
        except GeometryError as exc:
            raise DegenerateCorner(
                    f"corner ({i}, {j}): homography route failed: {exc}"
                    ) from exc

        if not projectively_equal(X, skew(P.v[j]) @ H, actx):
            raise DegenerateCorner(
                    f"corner ({i}, {j}): linear solve and homography disagree")

    return Corner(i, j, FundamentalCandidate.from_matrix(X, actx))


def corner_index_pairs(k: int = 5) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(k) if i != j]

# }}}


# {{{ smoothness and genericity

def smooth_point_check(cand: FundamentalCandidate, P: PairSet) -> bool:
    """*True* if :math:`v u^T` is outside the span of the data matrices, with
    *u*, *v* the right and left kernels of the candidate.
    """
    actx = P.actx
    data = data_matrix(P)
    extra = np.outer(cand.t, cand.e1).ravel()
    return actx.rank(np.vstack([data, extra])) > actx.rank(data)


@dataclass(frozen=True)
class GenericityReport:
    """
    .. attribute:: passed
    .. attribute:: failed_condition

        One of ``"a"`` (data rank), ``"b"`` (collinear triple),
        ``"c"`` (corners), ``"d"`` (smoothness), or *None*.

    .. attribute:: message
    .. attribute:: corners

        Map from *(i, j)* to :class:`Corner`, as far as computed.
    """

    passed: bool
    failed_condition: Optional[str] = None
    message: str = ""
    corners: Dict[Tuple[int, int], Corner] = field(
            default_factory=dict, repr=False)

    def __bool__(self) -> bool:
        return self.passed


def _all_distinct(mats: List[np.ndarray], actx: ArithmeticContext) -> bool:
    if actx.exact:
        keys = {tuple(actx.normalize(m.ravel())) for m in mats}
        return len(keys) == len(mats)

    return not any(projectively_equal(a, b, actx)
            for a, b in combinations(mats, 2))


def genericity_check(P: PairSet, cross_check: bool = False) -> GenericityReport:
    if P.k != 5:
        raise ValueError(f"genericity is defined for five pairs, got {P.k}")

    actx = P.actx
    rank = actx.rank(data_matrix(P))
    if rank != 5:
        return GenericityReport(False, "a", f"data matrices have rank {rank}")

    for side, pts in [("u", P.u), ("v", P.v)]:
        for triple in combinations(range(5), 3):
            if actx.sign(det3(*pts[list(triple)])) == 0:
                return GenericityReport(False, "b",
                        f"points {side}{triple} are collinear")

    corners = {}
    for i, j in corner_index_pairs():
        try:
            corners[i, j] = corner(P, i, j, cross_check=cross_check)
        except DegenerateCorner as exc:
            return GenericityReport(False, "c", str(exc), corners)

    if not _all_distinct([c.candidate.X for c in corners.values()], actx):
        return GenericityReport(False, "c", "corners are not distinct",
                corners)

    for (i, j), c in corners.items():
        if not smooth_point_check(c.candidate, P):
            return GenericityReport(False, "d",
                    f"corner ({i}, {j}) is a singular point", corners)

    logger.debug("five pairs passed the genericity check")
    return GenericityReport(True, corners=corners)


def irreducibility_hint_k4(P: PairSet) -> bool:
    """Sufficient condition for an irreducible epipolar variety of four
    pairs: each triple is in general position in at least one image.
    """
    if P.k != 4:
        raise ValueError(f"expected four pairs, got {P.k}")

    actx = P.actx
    for triple in combinations(range(4), 3):
        idx = list(triple)
        if (actx.sign(det3(*P.u[idx])) == 0
                and actx.sign(det3(*P.v[idx])) == 0):
            return False

    return True

# }}}

# vim: foldmethod=marker
