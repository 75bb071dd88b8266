"""Testing for the cubic surface, its conics and its 27 lines."""

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

import numpy as np
import pytest
import sympy as sp

from chirality import (
    DimensionError, ExactArithmeticContext, FloatArithmeticContext, PairSet,
    corner, determinantal_rep, projectively_equal, region_boundary_report,
    residual_line, schlafli_verify, sixth_point_pair, wall_conic)
from chirality.pytest import pytest_generate_tests_for_arithmetic_contexts

from testlib import (
    CURVED_REPRESENTATION, CURVED_SIXTH, NONCHIRAL_SIXTH, chiral_five,
    curved_five, nonchiral_five)


logger = logging.getLogger(__name__)

pytest_generate_tests = pytest_generate_tests_for_arithmetic_contexts([
    "exact", "float",
    ])


def _rational(x):
    return sp.Rational(x.numerator, x.denominator)


# {{{ test_determinantal_rep

def test_determinantal_rep():
    actx = ExactArithmeticContext()
    P = curved_five(actx)
    rep = determinantal_rep(P)

    assert rep.basis.shape == (4, 9)
    known = actx.array([np.ravel(M) for M in CURVED_REPRESENTATION])
    assert actx.rank(np.vstack([rep.basis, known])) == 4

    cubic = rep.cubic()
    assert cubic.total_degree() == 3

    z = actx.array([1, -2, 3, 5])
    assert cubic(*[_rational(x) for x in z]) == _rational(rep.evaluate(z))

    # corners lie on the surface
    for i, j in [(0, 1), (2, 4), (3, 0)]:
        z = rep.coordinates(corner(P, i, j).candidate.X)
        assert cubic(*[_rational(x) for x in z]) == 0

    with pytest.raises(DimensionError):
        determinantal_rep(P.subset(range(4)))


def test_determinantal_rep_float():
    actx = FloatArithmeticContext()
    rep = determinantal_rep(curved_five(actx))

    with pytest.raises(ValueError):
        rep.cubic()
    with pytest.raises(ValueError):
        residual_line(curved_five(actx), 0, 1)

# }}}


# {{{ test_wall_conics

def test_wall_conics(actx_factory):
    actx = actx_factory()
    P = curved_five(actx)
    u0, v0 = (actx.array(p) for p in CURVED_SIXTH)

    c = wall_conic(P, 0, "u")
    assert c.label == "C^1"
    assert all(c.contains(P.v[j]) for j in range(1, 5))
    assert c.contains(v0)

    c = wall_conic(P, 2, "v")
    assert c.label == "C_3"
    assert all(c.contains(P.u[j]) for j in (0, 1, 3, 4))
    assert c.contains(u0)

# }}}


# {{{ test_sixth_point_pair

def test_sixth_point_pair(actx_factory):
    actx = actx_factory()

    u0, v0 = sixth_point_pair(curved_five(actx))
    assert projectively_equal(u0, actx.array(CURVED_SIXTH[0]), actx)
    assert projectively_equal(v0, actx.array(CURVED_SIXTH[1]), actx)
    assert actx.sign(u0[2] - 1) == 0

    u0, v0 = sixth_point_pair(nonchiral_five(actx))
    assert actx.is_zero(u0 - actx.array(NONCHIRAL_SIXTH[0]))
    assert actx.is_zero(v0 - actx.array(NONCHIRAL_SIXTH[1]))

    # every matrix of L_P has the sixth pair as a solution
    P = nonchiral_five(actx)
    for i, j in [(0, 1), (4, 2)]:
        X = corner(P, i, j).candidate.X
        assert actx.sign(v0 @ X @ u0) == 0

    with pytest.raises(ValueError):
        sixth_point_pair(P.subset(range(4)))

# }}}


# {{{ test_double_six

def test_residual_lines():
    actx = ExactArithmeticContext()
    P = curved_five(actx)
    rep = determinantal_rep(P)

    for i, j in [(0, 1), (1, 3), (2, 5)]:
        a = residual_line(P, i, j, rep=rep)
        b = residual_line(P, j, i, rep=rep)
        assert a.kind == "residual"
        assert a.same_as(b, actx)
        for z in a.sample_points():
            assert actx.sign(rep.evaluate(z)) == 0

    with pytest.raises(ValueError):
        residual_line(P, 2, 2)


def test_schlafli_verify():
    actx = ExactArithmeticContext()
    ds = schlafli_verify(curved_five(actx))

    assert len(ds.lines) == 27
    assert len(ds.residual) == 15
    assert ds.incidence.shape == (27, 27)
    assert np.all(ds.incidence.sum(axis=1) == 10)
    assert not np.any(np.diag(ds.incidence))

    # each u-wall meets exactly the v-walls of the other five pairs
    for a in range(6):
        assert [bool(ds.incidence[a, 6 + b]) for b in range(6)] \
                == [a != b for b in range(6)]

    u0, v0 = ds.sixth
    assert projectively_equal(u0, actx.array(CURVED_SIXTH[0]), actx)

# }}}


# {{{ test_region_boundary_report

def test_region_boundary_report(actx_factory):
    actx = actx_factory()

    report = region_boundary_report(chiral_five(actx))
    assert not report.is_empty
    assert report.image1 == {1: (2, 3), 2: (0, 3), 3: (0, 2)}
    assert report.image2 == {0: (2, 3), 2: (1, 3), 3: (1, 2)}
    assert set(report.conics) == {"C_1", "C_3", "C_4", "C^2", "C^3", "C^4"}
    assert report.labels()["image1"][1] == ["C_3", "C_4"]
    assert report.labels()["image2"][0] == ["C^3", "C^4"]

    report = region_boundary_report(nonchiral_five(actx))
    assert report.is_empty
    assert report.conics == {}


def test_region_requires_five_pairs():
    P = PairSet.from_affine([(0, 0), (1, 0), (0, 1)],
            [(0, 0), (2, 0), (0, 3)], ExactArithmeticContext())
    with pytest.raises(ValueError):
        region_boundary_report(P)

# }}}


if __name__ == "__main__":
    import sys
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        pytest.main([__file__])

# vim: fdm=marker
