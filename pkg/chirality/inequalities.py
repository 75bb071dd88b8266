r"""
.. currentmodule:: chirality

Chiral inequalities
-------------------

For a fundamental candidate *X* with left kernel *t*, the chiral polynomial
of pair *i* is :math:`g_i(X) = (t \times v_i)^T X u_i`. Only the signs of
the products :math:`g_i g_j` are independent of the kernel representative
and of the scale of *X*; a P-regular *X* with all such products
nonnegative is exactly what a chiral reconstruction needs.

.. autofunction:: g
.. autoclass:: ChiralSignTable
.. autofunction:: sign_table
.. autofunction:: D
.. autoclass:: CornerReport
.. autofunction:: corner_sign_test
.. autofunction:: corner_sign_tests
.. autofunction:: chirotope_match
.. autofunction:: sign_agreement

.. autoexception:: DegenerateInput
.. autoexception:: InconclusiveD
.. autoexception:: SignDisagreement
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

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from chirality.arithmetic import ArithmeticContext, Scalar, resolve
from chirality.epipolar import (
    FundamentalCandidate, corner_index_pairs, is_p_regular)
from chirality.geometry import PairSet, det3


# {{{ exceptions

class DegenerateInput(ValueError):
    pass


class InconclusiveD(ArithmeticError):
    pass


class SignDisagreement(RuntimeError):
    pass

# }}}


# {{{ chiral polynomials

def g(cand: FundamentalCandidate, P: PairSet, i: int) -> Scalar:
    return np.cross(cand.t, P.v[i]) @ (cand.X @ P.u[i])


@dataclass(frozen=True)
class ChiralSignTable:
    """
    .. attribute:: values

        The :func:`g` values under the candidate's kernel representative.

    .. attribute:: inactive

        Indices with nonzero :func:`g`.

    .. attribute:: products

        ``(k, k)`` integer array of the signs of :math:`g_i g_j`.

    .. attribute:: regular
    .. autoattribute:: chiral_feasible
    .. autoattribute:: strictly_feasible
    """

    values: Tuple[Scalar, ...]
    inactive: FrozenSet[int]
    products: np.ndarray
    regular: bool

    @property
    def chiral_feasible(self) -> bool:
        return self.regular and bool(np.all(self.products >= 0))

    @property
    def strictly_feasible(self) -> bool:
        return self.regular and bool(np.all(self.products > 0))

    def inactive_products_positive(self) -> bool:
        idx = sorted(self.inactive)
        return bool(np.all(self.products[np.ix_(idx, idx)] > 0))


def sign_table(cand: FundamentalCandidate, P: PairSet) -> ChiralSignTable:
    actx = cand.actx
    values = tuple(g(cand, P, i) for i in range(P.k))
    signs = np.array([actx.sign(val) for val in values], dtype=np.int64)

    return ChiralSignTable(
            values=values,
            inactive=frozenset(i for i in range(P.k) if signs[i] != 0),
            products=np.outer(signs, signs),
            regular=is_p_regular(cand, P))

# }}}


# {{{ epipole-space surrogate

def D(P: PairSet, i: int, j: int, u: np.ndarray, v: np.ndarray) -> Scalar:
    r""":math:`\det[u_i\, u_j\, u] \det[v_i\, v_j\, v]`."""
    return det3(P.u[i], P.u[j], u) * det3(P.v[i], P.v[j], v)


@dataclass(frozen=True)
class CornerReport:
    """Same-sign test at the corner *(i, j)* of five pairs.

    .. attribute:: i
    .. attribute:: j
    .. attribute:: rest

        The remaining indices :math:`l < m < n`.

    .. attribute:: values

        :math:`(D_{lm}, D_{ln}, D_{mn})` evaluated at :math:`(u_i, v_j)`.

    .. attribute:: passed
    """

    i: int
    j: int
    rest: Tuple[int, int, int]
    values: Tuple[Scalar, Scalar, Scalar]
    passed: bool

    @property
    def labels(self) -> Tuple[Tuple[int, int], ...]:
        l, m, n = self.rest
        return ((l, m), (l, n), (m, n))


def corner_sign_test(P: PairSet, i: int, j: int) -> CornerReport:
    if P.k != 5:
        raise ValueError(f"corner tests need five pairs, got {P.k}")
    if i == j:
        raise ValueError(f"no corner at ({i}, {i})")

    actx = P.actx
    l, m, n = (idx for idx in range(5) if idx not in (i, j))
    u, v = P.u[i], P.v[j]
    values = (D(P, l, m, u, v), D(P, l, n, u, v), D(P, m, n, u, v))

    signs = {actx.sign(val) for val in values}
    if 0 in signs:
        raise DegenerateInput(
                f"corner ({i}, {j}): vanishing D value {values}; "
                "three points are collinear")

    return CornerReport(i, j, (l, m, n), values, passed=len(signs) == 1)


def corner_sign_tests(P: PairSet) -> List[CornerReport]:
    """All 20 corner reports, ordered lexicographically in *(i, j)*."""
    return [corner_sign_test(P, i, j) for i, j in corner_index_pairs()]

# }}}


# {{{ chirotope matching

def chirotope_match(a1: np.ndarray, a2: np.ndarray, a3: np.ndarray,
        sigma: Sequence[int],
        actx: Optional[ArithmeticContext] = None) -> np.ndarray:
    r"""Return *e* with the signs of
    :math:`(\det[a_1 a_2 e], \det[a_1 a_3 e], \det[a_2 a_3 e])` equal to
    *sigma*.

    The three determinants are linear in *e*, so *e* solves a 3x3 system
    with right-hand side *sigma*; it is then scaled to coprime integers.
    """
    actx = resolve(actx)

    if len(sigma) != 3 or any(s not in (-1, 1) for s in sigma):
        raise ValueError(f"sigma must consist of three signs, got {sigma}")

    normals = np.array([np.cross(a1, a2), np.cross(a1, a3), np.cross(a2, a3)])
    if actx.sign(actx.det(normals)) == 0:
        raise DegenerateInput("chirotope_match needs a non-collinear triple")

    e = actx.inv(normals) @ actx.array(list(sigma))
    return actx.normalize(e, keep_orientation=True)

# }}}


# {{{ sign agreement oracle

def sign_agreement(cand: FundamentalCandidate, P: PairSet,
        i: int, j: int) -> Tuple[int, int]:
    r"""Return the signs of :math:`D_{ij}(\operatorname{adj}(X) t, t)` and
    :math:`g_i g_j(X)`, which agree whenever the former is nonzero.
    """
    actx = cand.actx
    d_sign = actx.sign(D(P, i, j, cand.e1, cand.t))
    if d_sign == 0:
        raise InconclusiveD(f"D_{i}{j} vanishes at the epipoles")

    g_sign = actx.sign(g(cand, P, i)) * actx.sign(g(cand, P, j))
    if d_sign != g_sign:
        raise SignDisagreement(
                f"sign of D_{i}{j} is {d_sign}, sign of g_i g_j is {g_sign}")

    return d_sign, g_sign

# }}}

# vim: foldmethod=marker
