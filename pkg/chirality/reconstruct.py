"""
.. currentmodule:: chirality

Reconstructions
---------------

A projective reconstruction of *k* pairs consists of cameras
:math:`A_1 = [I \\mid 0]`, :math:`A_2 = [G \\mid t]`, world points
:math:`q_i` and nonzero scales with :math:`A_1 q_i = w_{1i} u_i` and
:math:`A_2 q_i = w_{2i} v_i`. It is chiral when every world point has
nonnegative depth in both cameras.

.. autoclass:: Reconstruction
.. autoclass:: ChiralCertificate
.. autofunction:: factor_fundamental
.. autofunction:: triangulate
.. autofunction:: chiral_upgrade
.. autofunction:: verify_chiral
.. autofunction:: reconstruct_from_X
.. autoclass:: ChiralityConditions
.. autofunction:: chirality_conditions
.. autofunction:: reconstruction_sign_agreement

.. autoexception:: IrregularPair
.. autoexception:: UpgradeInfeasible
.. autoexception:: NotFeasible
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
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from chirality.arithmetic import ArithmeticContext, Scalar, resolve
from chirality.epipolar import EpipolarViolation, FundamentalCandidate
from chirality.feasibility import strictly_feasible_point
from chirality.geometry import (
    Camera, GeometryError, InfiniteCamera, PairSet, depth_sign, det3,
    projectively_equal, skew)
from chirality.inequalities import InconclusiveD, sign_table


logger = logging.getLogger(__name__)


# {{{ exceptions

class IrregularPair(ValueError):
    pass


class UpgradeInfeasible(RuntimeError):
    pass


class NotFeasible(ValueError):
    pass

# }}}


# {{{ data types

@dataclass(frozen=True, eq=False)
class Reconstruction:
    """
    .. attribute:: A1
    .. attribute:: A2
    .. attribute:: Q

        World points, an array of shape ``(k, 4)``.

    .. attribute:: w1
    .. attribute:: w2

    .. automethod:: image_points
    .. automethod:: depth_signs
    .. automethod:: reprojects
    .. automethod:: transformed
    """

    A1: Camera
    A2: Camera
    Q: np.ndarray
    w1: np.ndarray
    w2: np.ndarray

    def __post_init__(self) -> None:
        k = len(self.Q)
        if self.Q.shape != (k, 4) or len(self.w1) != k or len(self.w2) != k:
            raise ValueError("inconsistent reconstruction shapes")

    @property
    def actx(self) -> ArithmeticContext:
        return self.A1.actx

    @property
    def k(self) -> int:
        return len(self.Q)

    def image_points(self) -> Tuple[np.ndarray, np.ndarray]:
        u = np.array([self.A1.matrix @ q / w for q, w in zip(self.Q, self.w1)])
        v = np.array([self.A2.matrix @ q / w for q, w in zip(self.Q, self.w2)])
        return u.reshape(-1, 3), v.reshape(-1, 3)

    def pairs(self) -> PairSet:
        u, v = self.image_points()
        return PairSet(u, v, self.actx)

    def depth_signs(self) -> np.ndarray:
        return np.array([[depth_sign(q, self.A1), depth_sign(q, self.A2)]
            for q in self.Q], dtype=np.int64).reshape(-1, 2)

    def reprojects(self, P: PairSet) -> bool:
        """*True* if the cameras map each world point onto the given pairs
        with the stored scales (exactly, in exact arithmetic).
        """
        actx = self.actx
        if P.k != self.k:
            return False
        return all(
                actx.is_zero(self.A1.matrix @ q - w1 * u)
                and actx.is_zero(self.A2.matrix @ q - w2 * v)
                for q, w1, w2, (u, v) in zip(self.Q, self.w1, self.w2, P))

    def transformed(self, H: np.ndarray) -> "Reconstruction":
        """The projectively equivalent reconstruction
        :math:`(A_1 H^{-1}, A_2 H^{-1}, H Q)`.
        """
        h_inv = self.actx.inv(H)
        return Reconstruction(
                Camera(self.A1.matrix @ h_inv, self.actx),
                Camera(self.A2.matrix @ h_inv, self.actx),
                (H @ self.Q.T).T, self.w1, self.w2)


PRODUCT_NAMES = ("inf*n1", "inf*n2", "n1*n2")


@dataclass(frozen=True)
class ChiralCertificate:
    """Signs of :math:`(n_\\infty^T q)(n_1^T q)`, :math:`(n_\\infty^T q)(n_2^T q)`
    and :math:`(n_1^T q)(n_2^T q)` per world point.

    .. attribute:: products

        Integer array of shape ``(k, 3)``.

    .. autoattribute:: passed
    .. autoattribute:: strict
    .. automethod:: violations
    """

    products: np.ndarray

    @property
    def passed(self) -> bool:
        return bool(np.all(self.products >= 0))

    @property
    def strict(self) -> bool:
        return bool(np.all(self.products > 0))

    def violations(self) -> List[Tuple[int, str]]:
        return [(int(i), PRODUCT_NAMES[p])
                for i, p in zip(*np.nonzero(self.products < 0))]

# }}}


# {{{ factorization and triangulation

def factor_fundamental(cand: FundamentalCandidate
        ) -> Tuple[np.ndarray, np.ndarray]:
    r"""Return *(G, t)* with :math:`[t]_\times G = X` and *G* invertible.

    :math:`G_0 = -[t]_\times X / \|t\|^2` solves the equation but is
    singular; :math:`G = G_0 + t a^T` is tried for *a* from a short list
    starting with the right epipole, for which it is always invertible.
    """
    actx = cand.actx
    t = cand.t
    G0 = -(skew(t) @ cand.X) / (t @ t)

    one, zero = actx.scalar(1), actx.scalar(0)
    candidates = [cand.e1] + [actx.array(a) for a in [
        [one, zero, zero], [zero, one, zero], [zero, zero, one], [one, one, one]]]
    for a in candidates:
        G = G0 + np.outer(t, a)
        if actx.sign(actx.det(G)) != 0:
            assert actx.is_zero(skew(t) @ G - cand.X)
            return G, t

    raise AssertionError("no invertible factor found")


def _scale_between(image_pt: np.ndarray, proj: np.ndarray,
        actx: ArithmeticContext) -> Scalar:
    """The *w* with ``proj == w * image_pt``."""
    idx = next(i for i, x in enumerate(image_pt) if actx.sign(x) != 0)
    w = proj[idx] / image_pt[idx]
    if not actx.is_zero(proj - w * image_pt):
        raise EpipolarViolation("world point does not project onto the pair")
    return w


def _baseline_point(A1: Camera, A2: Camera, u: np.ndarray, v: np.ndarray,
        depth_product_sign: int) -> Tuple[np.ndarray, Scalar, Scalar]:
    actx = A1.actx
    c1, c2 = A1.cramer_center(), A2.cramer_center()
    base = actx.sign(
            (A1.principal_ray() @ c2) * (A2.principal_ray() @ c1))
    if base == 0:
        raise IrregularPair("a camera center lies on the other principal plane")

    sgn = depth_product_sign * base
    for beta in [1, 2, Fraction(1, 2)]:
        q = c1 + sgn * actx.scalar(beta) * c2
        if actx.sign(q[3]) != 0:
            w1 = _scale_between(u, A1.matrix @ q, actx)
            w2 = _scale_between(v, A2.matrix @ q, actx)
            if actx.sign(w1) < 0:
                q, w1, w2 = -q, -w1, -w2
            return q, w1, w2

    raise AssertionError("no finite baseline point found")


def triangulate(A1: Camera, A2: Camera, u: np.ndarray, v: np.ndarray,
        depth_product_sign: int = 1) -> Tuple[np.ndarray, Scalar, Scalar]:
    """Return *(q, w1, w2)* with ``A1 q = w1 u`` and ``A2 q = w2 v``.

    The homogeneous 6x6 system in *(q, w1, w2)* is solved exactly. If
    *(u, v)* is the epipole pair, the solution set is the baseline and a
    finite baseline point whose depth product
    :math:`(n_1^T q)(n_2^T q)` has sign *depth_product_sign* is returned.
    The result is scaled to ``w1 == 1`` off the baseline.
    """
    actx = A1.actx
    system = actx.zeros((6, 6))
    system[:3, :4] = A1.matrix
    system[3:, :4] = A2.matrix
    system[:3, 4] = -u
    system[3:, 5] = -v

    kernel = actx.nullspace(system)
    dim = kernel.shape[1]
    if dim == 0:
        raise EpipolarViolation(f"pair {u} <-> {v} violates the epipolar equation")
    if dim == 2:
        return _baseline_point(A1, A2, u, v, depth_product_sign)
    if dim > 2:
        raise GeometryError("cameras share their center")

    sol = kernel[:, 0]
    q, w1, w2 = sol[:4], sol[4], sol[5]
    if actx.sign(w1) == 0 or actx.sign(w2) == 0:
        raise IrregularPair(
                f"exactly one point of the pair {u} <-> {v} is an epipole")

    return q / w1, w1 / w1, w2 / w1

# }}}


# {{{ chirality verification and upgrade

def verify_chiral(R: Reconstruction) -> ChiralCertificate:
    actx = R.actx
    for cam in (R.A1, R.A2):
        if not cam.finite:
            raise InfiniteCamera("chirality needs finite cameras")
    if projectively_equal(R.A1.cramer_center(), R.A2.cramer_center(), actx):
        raise GeometryError("cameras share their center")

    n1, n2 = R.A1.principal_ray(), R.A2.principal_ray()
    rows = []
    for q in R.Q:
        s_inf, s1, s2 = actx.sign(q[3]), actx.sign(n1 @ q), actx.sign(n2 @ q)
        rows.append([s_inf*s1, s_inf*s2, s1*s2])

    return ChiralCertificate(np.array(rows, dtype=np.int64).reshape(-1, 3))


def chiral_upgrade(R: Reconstruction) -> np.ndarray:
    r"""Return a 4x4 *H* such that :meth:`Reconstruction.transformed` yields
    a chiral reconstruction.

    *H* is the identity with its last row replaced by :math:`h^T`, which
    keeps :math:`A_1 = [I \mid 0]`. With the :math:`q_i` oriented so that
    :math:`w_{1i} > 0` and *s* the common sign of :math:`w_{1i} w_{2i}`, the
    transformed depth signs are those of :math:`h^T q_i`,
    :math:`\rho h^T c_1`, :math:`\rho s h^T c_2` and :math:`\rho h_4`
    for :math:`\rho = \pm 1`; a strictly feasible *h* gives strict chirality.
    """
    actx = R.actx
    try:
        if verify_chiral(R).strict:
            return actx.eye(4)
    except GeometryError:
        pass

    scale_signs = {actx.sign(w1*w2) for w1, w2 in zip(R.w1, R.w2)}
    if len(scale_signs) != 1 or 0 in scale_signs:
        raise UpgradeInfeasible(
                "scale products w1*w2 do not share a strict sign")
    s, = scale_signs

    oriented = [actx.sign(w1) * q for q, w1 in zip(R.Q, R.w1)]
    c1, c2 = R.A1.cramer_center(), R.A2.cramer_center()
    e4 = actx.array([0, 0, 0, 1])

    for rho in (1, -1):
        rows = np.array(oriented + [rho*c1, rho*s*c2, rho*e4])
        h = strictly_feasible_point(rows, actx)
        if h is None:
            continue

        H = actx.eye(4)
        H[3] = h
        if verify_chiral(R.transformed(H)).strict:
            return H
        logger.debug("separating plane %s failed verification", h)

    raise UpgradeInfeasible("no plane separates the world points from "
            "the camera centers")

# }}}


# {{{ pipeline

def reconstruct_from_X(P: PairSet, cand: FundamentalCandidate) -> Reconstruction:
    """Factor, triangulate, upgrade and verify.

    Epipole pairs are placed on the baseline with the majority depth-product
    sign of the other points.
    """
    actx = P.actx
    table = sign_table(cand, P)
    if not table.chiral_feasible:
        raise NotFeasible("candidate is not in the chiral epipolar region")

    G, t = factor_fundamental(cand)
    A1 = Camera(np.hstack([actx.eye(3), actx.zeros((3, 1))]), actx)
    A2 = Camera.from_parts(G, t, actx)
    n1, n2 = A1.principal_ray(), A2.principal_ray()

    baseline = [i for i, (u, v) in enumerate(P)
            if actx.is_zero(cand.X @ u) and actx.is_zero(v @ cand.X)]

    points: List[Optional[Tuple[np.ndarray, Scalar, Scalar]]] = [None] * P.k
    votes = 0
    for i, (u, v) in enumerate(P):
        if i in baseline:
            continue
        q, w1, w2 = triangulate(A1, A2, u, v)
        points[i] = (q, w1, w2)
        votes += actx.sign(n1 @ q) * actx.sign(n2 @ q)

    sigma = -1 if votes < 0 else 1
    for i in baseline:
        u, v = P.pair(i)
        points[i] = triangulate(A1, A2, u, v, depth_product_sign=sigma)

    Q = np.array([p[0] for p in points]).reshape(-1, 4)
    R = Reconstruction(A1, A2, Q,
            np.array([p[1] for p in points]), np.array([p[2] for p in points]))

    H = chiral_upgrade(R)
    result = R.transformed(H)

    cert = verify_chiral(result)
    if not cert.passed:
        raise UpgradeInfeasible(
                f"upgraded reconstruction violates {cert.violations()}")
    if not result.reprojects(P):
        raise AssertionError("upgraded reconstruction does not reproject")

    return result

# }}}


# {{{ equivalent conditions

def _same_sign(signs: Sequence[int]) -> bool:
    return len({s for s in signs if s != 0}) <= 1


@dataclass(frozen=True)
class ChiralityConditions:
    """Sign-sameness of three quantities that characterize projective
    reconstructions admitting a chiral equivalent.

    .. attribute:: depth_products

        :math:`(n_1^T q_i)(n_2^T q_i)`

    .. attribute:: scale_products

        :math:`w_{1i} w_{2i}`

    .. attribute:: quadruple_products

        :math:`(t \\times v_i)^T (t \\times G u_i)`, off the baseline.
    """

    depth_products: bool
    scale_products: bool
    quadruple_products: bool

    @property
    def consistent(self) -> bool:
        return (self.depth_products == self.scale_products
                == self.quadruple_products)


def chirality_conditions(R: Reconstruction) -> ChiralityConditions:
    actx = R.actx
    if not actx.is_zero(R.A1.matrix[:, :3] - actx.eye(3)) \
            or not actx.is_zero(R.A1.matrix[:, 3]):
        raise ValueError("chirality_conditions expects A1 = [I | 0]")

    n1, n2 = R.A1.principal_ray(), R.A2.principal_ray()
    G, t = R.A2.G, R.A2.t
    u, v = R.image_points()

    return ChiralityConditions(
            depth_products=_same_sign(
                [actx.sign(n1 @ q) * actx.sign(n2 @ q) for q in R.Q]),
            scale_products=_same_sign(
                [actx.sign(w1 * w2) for w1, w2 in zip(R.w1, R.w2)]),
            quadruple_products=_same_sign(
                [actx.sign(np.cross(t, vi) @ np.cross(t, G @ ui))
                    for ui, vi in zip(u, v)]))


def reconstruction_sign_agreement(R: Reconstruction,
        i: int, j: int) -> Tuple[int, int]:
    r"""Return the signs of :math:`D_{ij}(-A_1 c_2, A_2 c_1)` and of
    :math:`(w_{1i} w_{2i})(w_{1j} w_{2j})`.
    """
    actx = R.actx
    u, v = R.image_points()
    e1 = -(R.A1.matrix @ R.A2.cramer_center())
    e2 = R.A2.matrix @ R.A1.cramer_center()

    lhs = actx.sign(det3(u[i], u[j], e1)) * actx.sign(det3(v[i], v[j], e2))
    if lhs == 0:
        raise InconclusiveD(f"D_{i}{j} vanishes at the epipoles")

    rhs = actx.sign(R.w1[i] * R.w2[i] * R.w1[j] * R.w2[j])
    return lhs, rhs

# }}}

# vim: foldmethod=marker
