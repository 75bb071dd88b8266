r"""
.. currentmodule:: chirality

Projective primitives
---------------------

Points of the image planes are 3-vectors and world points are 4-vectors,
both held as :class:`numpy.ndarray`\ s of the active arithmetic context's
scalars. Matrices are plain 2D arrays. Equality up to scale is
:func:`projectively_equal`; ``==`` on arrays is coordinate equality.

.. autofunction:: skew
.. autofunction:: cross
.. autofunction:: det3
.. autofunction:: rank_of_points
.. autofunction:: projectively_equal
.. autofunction:: cone_member
.. autofunction:: homography_from_correspondences

.. autoclass:: Camera
.. autofunction:: depth_sign

.. autoclass:: PairSet

.. autoexception:: GeometryError
.. autoexception:: InvalidPairSet
.. autoexception:: InfinitePoint
.. autoexception:: InfiniteCamera
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

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from chirality.arithmetic import ArithmeticContext, Scalar, resolve


# {{{ exceptions

class GeometryError(ValueError):
    pass


class InvalidPairSet(GeometryError):
    pass


class InfinitePoint(GeometryError):
    pass


class InfiniteCamera(GeometryError):
    pass

# }}}


# {{{ vector primitives

def skew(t: np.ndarray) -> np.ndarray:
    """Return the matrix of :math:`r \\mapsto t \\times r`."""
    zero = t[0] - t[0]
    return np.array([
        [zero, -t[2], t[1]],
        [t[2], zero, -t[0]],
        [-t[1], t[0], zero],
        ], dtype=t.dtype)


def cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.cross(a, b)


def det3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> Scalar:
    """Determinant of the matrix with columns *a*, *b*, *c*."""
    return np.dot(a, np.cross(b, c))


def rank_of_points(points: Sequence[np.ndarray],
        actx: Optional[ArithmeticContext] = None) -> int:
    if len(points) == 0:
        raise ValueError("need at least one point")
    return resolve(actx).rank(np.column_stack(list(points)))


def projectively_equal(a: np.ndarray, b: np.ndarray,
        actx: Optional[ArithmeticContext] = None) -> bool:
    """*True* if the nonzero vectors *a* and *b* agree up to a nonzero scale.
    Decided on the 2x2 minors of ``[a b]``; no coordinate is divided by.
    """
    actx = resolve(actx)
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs. {b.shape}")
    if actx.is_zero(a) or actx.is_zero(b):
        raise ValueError("the zero vector is not a projective point")

    return actx.is_zero(np.outer(a, b) - np.outer(b, a))


def cone_member(w: np.ndarray, a: np.ndarray, b: np.ndarray,
        actx: Optional[ArithmeticContext] = None
        ) -> Optional[Tuple[Scalar, Scalar]]:
    """Return nonnegative coefficients :math:`(\\lambda_1, \\lambda_2)` with
    :math:`w = \\lambda_1 a + \\lambda_2 b`, or *None* if *w* is outside the
    closed cone spanned by *a* and *b*.
    """
    actx = resolve(actx)
    if actx.is_zero(a) and actx.is_zero(b):
        raise ValueError("cone generators must not both be zero")

    zero = actx.scalar(0)
    if actx.is_zero(w):
        return zero, zero

    if actx.rank(np.column_stack([a, b])) == 2:
        coeffs = actx.solve(np.column_stack([a, b]), w)
        if coeffs is None:
            return None
        lam1, lam2 = coeffs
        if actx.sign(lam1) >= 0 and actx.sign(lam2) >= 0:
            return lam1, lam2
        return None

    # parallel generators: one usable direction per nonzero generator
    for idx, gen in enumerate([a, b]):
        if actx.is_zero(gen):
            continue
        coeff = actx.solve(gen.reshape(-1, 1), w)
        if coeff is not None and actx.sign(coeff[0]) > 0:
            return (coeff[0], zero) if idx == 0 else (zero, coeff[0])

    return None


def homography_from_correspondences(
        src: Sequence[np.ndarray], dst: Sequence[np.ndarray],
        actx: Optional[ArithmeticContext] = None) -> np.ndarray:
    """Return the 3x3 matrix *H* with ``H @ src[i] ~ dst[i]`` for four
    correspondences in general position.
    """
    actx = resolve(actx)
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("need exactly four correspondences")

    blocks = []
    for s, d in zip(src, dst):
        # entry (r, 3*r + c) multiplies h[r, c], so that lift @ h = H @ s
        lift = actx.zeros((3, 9))
        for r in range(3):
            lift[r, 3*r:3*r+3] = s
        blocks.append(skew(np.asarray(d)) @ lift)

    kernel = actx.nullspace(np.vstack(blocks))
    if kernel.shape[1] != 1:
        raise GeometryError(
                "correspondences are not in general position "
                f"(solution space has dimension {kernel.shape[1]})")

    return kernel[:, 0].reshape(3, 3)

# }}}


# {{{ cameras

@dataclass(frozen=True, eq=False)
class Camera:
    """A projective camera :math:`A = [G \\mid t]` of rank 3.

    .. attribute:: matrix
    .. autoattribute:: G
    .. autoattribute:: t
    .. autoattribute:: finite
    .. automethod:: cramer_center
    .. automethod:: principal_ray
    """

    matrix: np.ndarray
    actx: ArithmeticContext = field(default=None, repr=False)  # type: ignore

    def __post_init__(self) -> None:
        object.__setattr__(self, "actx", resolve(self.actx))
        if self.matrix.shape != (3, 4):
            raise ValueError(f"camera must be 3x4, got shape {self.matrix.shape}")
        if self.actx.rank(self.matrix) != 3:
            raise GeometryError("camera matrix must have rank 3")

    @classmethod
    def from_parts(cls, G: np.ndarray, t: np.ndarray,
            actx: Optional[ArithmeticContext] = None) -> "Camera":
        return cls(np.hstack([np.asarray(G), np.asarray(t).reshape(3, 1)]), actx)

    @property
    def G(self) -> np.ndarray:
        return self.matrix[:, :3]

    @property
    def t(self) -> np.ndarray:
        return self.matrix[:, 3]

    @property
    def finite(self) -> bool:
        return self.actx.sign(self.actx.det(self.G)) != 0

    def cramer_center(self) -> np.ndarray:
        """The kernel vector of signed maximal minors, with last entry
        :math:`\\det G`.
        """
        entries = []
        for j in range(4):
            minor = np.delete(self.matrix, j, axis=1)
            sgn = 1 if j % 2 == 1 else -1
            entries.append(sgn * self.actx.det(minor))

        return np.array(entries, dtype=self.matrix.dtype)

    def principal_ray(self) -> np.ndarray:
        return self.actx.det(self.G) * self.matrix[2]

    def scaled(self, mu: Scalar) -> "Camera":
        return Camera(self.actx.scalar(mu) * self.matrix, self.actx)


def depth_sign(q: np.ndarray, camera: Camera) -> int:
    """Sign of the depth of the finite world point *q* in the finite
    *camera*: :math:`\\operatorname{sign}((n_A^T q)(n_\\infty^T q))`.
    """
    actx = camera.actx
    if actx.sign(q[3]) == 0:
        raise InfinitePoint(f"world point {q} lies on the plane at infinity")
    if not camera.finite:
        raise InfiniteCamera("camera center lies on the plane at infinity")

    return actx.sign(np.dot(camera.principal_ray(), q)) * actx.sign(q[3])

# }}}


# {{{ point pairs

@dataclass(frozen=True, eq=False)
class PairSet:
    """An ordered list of point pairs :math:`(u_i, v_i)`.

    Both *u* and *v* are arrays of shape ``(k, 3)`` with last coordinate 1.
    The *u_i* are pairwise distinct, and so are the *v_i*.

    .. attribute:: u
    .. attribute:: v
    .. attribute:: actx
    .. autoattribute:: k
    .. autoattribute:: U
    .. autoattribute:: V
    .. automethod:: from_affine
    .. automethod:: subset
    .. automethod:: swapped
    """

    u: np.ndarray
    v: np.ndarray
    actx: ArithmeticContext = field(default=None, repr=False)  # type: ignore

    def __post_init__(self) -> None:
        object.__setattr__(self, "actx", resolve(self.actx))
        actx = self.actx

        if self.u.ndim != 2 or self.u.shape[1:] != (3,):
            raise InvalidPairSet(f"expected shape (k, 3), got {self.u.shape}")
        if self.u.shape != self.v.shape:
            raise InvalidPairSet(
                    f"image point counts differ: {len(self.u)} vs. {len(self.v)}")

        for side, pts in [("u", self.u), ("v", self.v)]:
            for i, pt in enumerate(pts):
                if actx.sign(pt[2] - 1) != 0:
                    raise InvalidPairSet(
                            f"{side}_{i} must have last coordinate 1, got {pt[2]}")
            for i, j in combinations(range(len(pts)), 2):
                if projectively_equal(pts[i], pts[j], actx):
                    raise InvalidPairSet(
                            f"{side}_{i} and {side}_{j} coincide: {pts[i]}")

    @classmethod
    def from_affine(cls, u: Sequence[Sequence], v: Sequence[Sequence],
            actx: Optional[ArithmeticContext] = None) -> "PairSet":
        """Homogenize 2D points (or accept 3D points with last coordinate 1)."""
        actx = resolve(actx)

        def homogenize(pts: Sequence[Sequence]) -> np.ndarray:
            rows = []
            for pt in pts:
                if len(pt) == 2:
                    rows.append([pt[0], pt[1], 1])
                elif len(pt) == 3:
                    rows.append(list(pt))
                else:
                    raise InvalidPairSet(f"point '{pt}' has {len(pt)} coordinates")
            if not rows:
                return actx.zeros((0, 3))
            return actx.array(rows)

        return cls(homogenize(u), homogenize(v), actx)

    @property
    def k(self) -> int:
        return len(self.u)

    def __len__(self) -> int:
        return self.k

    def __iter__(self) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        return iter(zip(self.u, self.v))

    def pair(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.u[i], self.v[i]

    @property
    def U(self) -> np.ndarray:
        """The 3xk matrix of the first-image points."""
        return self.u.T

    @property
    def V(self) -> np.ndarray:
        return self.v.T

    def subset(self, indices: Sequence[int]) -> "PairSet":
        indices = list(indices)
        return PairSet(self.u[indices], self.v[indices], self.actx)

    def swapped(self) -> "PairSet":
        """The same pairs with the two images exchanged."""
        return PairSet(self.v, self.u, self.actx)

    def with_pair(self, u: np.ndarray, v: np.ndarray) -> "PairSet":
        return PairSet(np.vstack([self.u, u]), np.vstack([self.v, v]), self.actx)

    def affine(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.u[:, :2], self.v[:, :2]

    def __repr__(self) -> str:
        return f"PairSet(k={self.k}, actx={self.actx!r})"

# }}}

# vim: foldmethod=marker
