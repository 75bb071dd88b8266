"""Testing for the linear space of epipolar matrices, walls and corners."""

__copyright__ = "Copyright (C) 2024 chirality contributors"

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
from itertools import combinations

import numpy as np
import pytest

from chirality import (
    EpipolarViolation, ExactArithmeticContext, FundamentalCandidate, PairSet,
    RankError, adjoint3, corner, genericity_check, irreducibility_hint_k4,
    is_p_regular, is_regular, kernels, lp_basis, projectively_equal, skew,
    smooth_point_check, wall_corner_parameters, wall_pencil)
from chirality.epipolar import constraint_matrix, right_kernel_rows
from chirality.pytest import pytest_generate_tests_for_arithmetic_contexts

from testlib import (
    chiral_five, curved_five, nonchiral_five, square_and_four_on_a_line,
    three_and_four_on_a_line)


logger = logging.getLogger(__name__)

pytest_generate_tests = pytest_generate_tests_for_arithmetic_contexts([
    "exact", "float",
    ])


# {{{ test_lp_basis

def test_lp_basis(actx_factory):
    actx = actx_factory()

    lp = lp_basis(curved_five(actx))
    assert lp.codim == 5
    assert lp.projective_dimension == 3

    P = curved_five(actx)
    for X in lp.matrices():
        assert actx.is_zero(np.array([v @ X @ u for u, v in P]))

    one = PairSet.from_affine([(1, 2)], [(3, -1)], actx)
    assert lp_basis(one).projective_dimension == 7

# }}}


# {{{ test_adjoint_and_kernels

def test_adjoint_and_kernels(actx_factory):
    actx = actx_factory()

    t = actx.array([1, -2, 3])
    assert actx.is_zero(adjoint3(skew(t)) - np.outer(t, t))

    a, b, c, d = actx.array([[1, 2, 0], [0, 1, 1], [3, -1, 2], [1, 1, 1]])
    X = np.outer(a, b) + np.outer(c, d)
    assert actx.rank(X) == 2
    assert actx.rank(adjoint3(X)) == 1

    t, e1 = kernels(X, actx)
    assert actx.is_zero(t @ X)
    assert actx.is_zero(X @ e1)

    # rescaling t rescales e1 by the same factor
    assert actx.is_zero(adjoint3(X) @ (-3 * t) + 3 * e1)

    G = actx.array([[2, 0, 1], [1, 1, 0], [0, 1, 1]])
    t = actx.array([1, 1, 2])
    cand = FundamentalCandidate.from_matrix(skew(t) @ G, actx)
    assert projectively_equal(cand.t, t, actx)
    assert projectively_equal(cand.e1, actx.inv(G) @ t, actx)

    with pytest.raises(RankError):
        kernels(G, actx)

# }}}


# {{{ test_corners

def test_corners(actx_factory):
    actx = actx_factory()
    P = chiral_five(actx)

    c = corner(P, 1, 2, cross_check=True)
    X = c.candidate.X
    assert actx.rank(X) == 2
    assert actx.is_zero(c.candidate.residuals(P))
    assert projectively_equal(c.candidate.e1, P.u[1], actx)
    assert projectively_equal(c.candidate.t, P.v[2], actx)

    # neither pair of the corner is regular, every other pair is
    assert not is_regular(c.candidate, *P.pair(1))
    assert not is_regular(c.candidate, *P.pair(2))
    assert all(is_regular(c.candidate, *P.pair(i)) for i in (0, 3, 4))
    assert not is_p_regular(c.candidate, P)

    assert smooth_point_check(c.candidate, P)

    with pytest.raises(ValueError):
        corner(P, 2, 2)

    with pytest.raises(EpipolarViolation):
        FundamentalCandidate.from_matrix(
                skew(actx.array([1, 2, 3])), actx).check_epipolar(P)


def test_corners_distinct():
    actx = ExactArithmeticContext()
    report = genericity_check(nonchiral_five(actx), cross_check=True)
    assert report.passed
    assert len(report.corners) == 20

    keys = {tuple(actx.normalize(c.candidate.X.ravel()))
            for c in report.corners.values()}
    assert len(keys) == 20

# }}}


# {{{ test_walls

def test_walls(actx_factory):
    actx = actx_factory()
    P = curved_five(actx)

    # walls of the same image are pairwise disjoint
    for side in ("u", "v"):
        pts = P.u if side == "u" else P.v
        for i, j in combinations(range(5), 2):
            if side == "u":
                rows = np.vstack([constraint_matrix(P, right=pts[i]),
                    right_kernel_rows(pts[j], actx)])
            else:
                rows = np.vstack([constraint_matrix(P, left=pts[i]),
                    constraint_matrix(P, left=pts[j])])
            assert actx.nullspace(rows).shape[1] == 0

    pencil = wall_pencil(P, 0, "u")
    params = wall_corner_parameters(pencil, P)
    assert sorted(params) == [1, 2, 3, 4]
    for j, (s, sigma) in params.items():
        assert projectively_equal(pencil.point(s, sigma),
                corner(P, 0, j, cross_check=False).candidate.X, actx)

# }}}


# {{{ test_genericity

def test_genericity(actx_factory):
    actx = actx_factory()

    assert genericity_check(nonchiral_five(actx)).passed
    assert genericity_check(curved_five(actx)).passed

    # u_1, u_3 and the moved u_5 are collinear
    P = PairSet.from_affine(
            [(0, 0), (0, 4), (4, 0), (2, 1), (2, 0)],
            [(2, 1), (2, 3), (4, 0), (0, 4), (1, 1)], actx)
    report = genericity_check(P)
    assert not report.passed
    assert report.failed_condition == "b"

    with pytest.raises(ValueError):
        genericity_check(P.subset(range(4)))


def test_irreducibility_hint(actx_factory):
    actx = actx_factory()
    assert not irreducibility_hint_k4(three_and_four_on_a_line(actx))
    assert irreducibility_hint_k4(square_and_four_on_a_line(actx))

# }}}


if __name__ == "__main__":
    import sys
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        pytest.main([__file__])

# vim: fdm=marker
