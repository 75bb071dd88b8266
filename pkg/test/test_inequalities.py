"""Testing for the chiral inequalities and the corner sign tests."""

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
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from chirality import (
    D, DegenerateInput, ExactArithmeticContext, FundamentalCandidate,
    InconclusiveD, constrained_solutions, corner, corner_sign_test,
    corner_sign_tests, det3, g, sign_agreement, sign_table, skew)
from chirality.inequalities import chirotope_match
from chirality.pytest import pytest_generate_tests_for_arithmetic_contexts

from testlib import (
    CHIRAL_CORNER_VALUES, CHIRAL_PASSING, NONCHIRAL_CORNER_VALUES, chiral_five,
    nonchiral_five)


logger = logging.getLogger(__name__)

pytest_generate_tests = pytest_generate_tests_for_arithmetic_contexts([
    "exact", "float",
    ])


def _as_ints(values):
    return tuple(int(round(float(x))) for x in values)


# {{{ test_g_quadruple_product

def test_g_quadruple_product(actx_factory):
    actx = actx_factory()
    P = nonchiral_five(actx)

    G = actx.array([[2, 0, 1], [1, 1, 0], [0, 1, 1]])
    t = actx.array([1, 1, 2])
    cand = FundamentalCandidate.from_matrix(skew(t) @ G, actx)
    lam = cand.t[2] / t[2]

    for i, (u, v) in enumerate(P):
        expected = np.cross(t, v) @ np.cross(t, G @ u)
        assert actx.sign(g(cand, P, i) - lam * expected) == 0


def test_g_quadruple_product_random():
    actx = ExactArithmeticContext()
    P = nonchiral_five(actx)

    rng = np.random.default_rng(seed=20)
    checked = 0
    while checked < 100:
        G = actx.array(rng.integers(-4, 5, size=(3, 3)).tolist())
        t = actx.array(rng.integers(-4, 5, size=3).tolist())
        if actx.sign(actx.det(G)) == 0 or actx.is_zero(t):
            continue

        cand = FundamentalCandidate.from_matrix(skew(t) @ G, actx)
        m = next(m for m in range(3) if actx.sign(t[m]) != 0)
        lam = cand.t[m] / t[m]
        for i, (u, v) in enumerate(P):
            expected = np.cross(t, v) @ np.cross(t, G @ u)
            assert actx.sign(g(cand, P, i) - lam * expected) == 0
        checked += 1

# }}}


# {{{ test_g_zero_locus

def test_g_zero_locus(actx_factory):
    actx = actx_factory()
    P = chiral_five(actx)

    for i, j in [(0, 1), (1, 2), (4, 3)]:
        cand = corner(P, i, j).candidate
        for l in range(5):
            vanishes = actx.sign(g(cand, P, l)) == 0
            assert vanishes == (l in (i, j))

# }}}


# {{{ test_corner_table

def test_corner_table(actx_factory):
    actx = actx_factory()
    reports = corner_sign_tests(nonchiral_five(actx))

    assert len(reports) == 20
    for r in reports:
        assert _as_ints(r.values) == NONCHIRAL_CORNER_VALUES[r.i, r.j]
        assert not r.passed

    # row (1,2) of the table spelled out
    P = nonchiral_five(actx)
    assert actx.sign(D(P, 2, 3, P.u[0], P.v[1]) + 16) == 0
    assert actx.sign(D(P, 2, 4, P.u[0], P.v[1]) + 84) == 0
    assert actx.sign(D(P, 3, 4, P.u[0], P.v[1]) - 20) == 0


def test_passing_corners(actx_factory):
    actx = actx_factory()
    P = chiral_five(actx)
    reports = corner_sign_tests(P)

    assert {(r.i, r.j) for r in reports if r.passed} == CHIRAL_PASSING
    by_corner = {(r.i, r.j): r for r in reports}
    for key, values in CHIRAL_CORNER_VALUES.items():
        assert _as_ints(by_corner[key].values) == values

    # not symmetric in (i, j)
    assert by_corner[1, 2].passed
    assert not by_corner[2, 1].passed
    assert by_corner[1, 2].rest == (0, 3, 4)
    assert by_corner[1, 2].labels == ((0, 3), (0, 4), (3, 4))

    with pytest.raises(ValueError):
        corner_sign_test(P, 3, 3)
    with pytest.raises(ValueError):
        corner_sign_test(P.subset(range(4)), 0, 1)

# }}}


# {{{ test_sign_table_at_corner

def test_sign_table_at_corner(actx_factory):
    actx = actx_factory()
    P = chiral_five(actx)

    table = sign_table(corner(P, 1, 2).candidate, P)
    assert table.inactive == frozenset({0, 3, 4})
    assert table.inactive_products_positive()
    assert not table.regular
    assert not table.chiral_feasible

# }}}


# {{{ test_chirotope_match

def test_chirotope_match(actx_factory):
    actx = actx_factory()

    a1, a2, a3 = actx.array([[0, 0, 1], [1, 0, 1], [0, 1, 1]])
    for sigma in product([-1, 1], repeat=3):
        e = chirotope_match(a1, a2, a3, sigma, actx)
        signs = (actx.sign(det3(a1, a2, e)), actx.sign(det3(a1, a3, e)),
                actx.sign(det3(a2, a3, e)))
        assert signs == sigma

    with pytest.raises(DegenerateInput):
        chirotope_match(a1, a2, a1 + a2, (1, 1, 1), actx)

    with pytest.raises(ValueError):
        chirotope_match(a1, a2, a3, (1, 0, 1), actx)

# }}}


# {{{ test_sign_agreement

def test_sign_agreement(actx_factory):
    actx = actx_factory()

    for P in [nonchiral_five(actx), chiral_five(actx)]:
        for i, j in [(0, 1), (1, 2), (2, 0), (3, 4)]:
            cand = corner(P, i, j).candidate
            rest = [l for l in range(5) if l not in (i, j)]
            for l, m in combinations(rest, 2):
                d_sign, g_sign = sign_agreement(cand, P, l, m)
                assert d_sign == g_sign

# }}}


# {{{ randomized surface samples

def _random_members(P, rng, count):
    """Rank 2 members of :math:`L_P` with a random lattice right kernel."""
    actx = P.actx
    members = []
    while len(members) < count:
        e1 = actx.array(rng.integers(-9, 10, size=3).tolist())
        if actx.is_zero(e1):
            continue
        sol = constrained_solutions(P, right=e1)
        if len(sol) != 1:
            continue
        X = sol[0].reshape(3, 3)
        if actx.rank(X) != 2:
            continue
        members.append(FundamentalCandidate.from_matrix(X, actx))

    return members


@pytest.mark.parametrize("count", [
    100,
    pytest.param(1000, marks=pytest.mark.slow),
    ])
def test_nonchiral_surface_samples(count):
    actx = ExactArithmeticContext()
    P = nonchiral_five(actx)
    rng = np.random.default_rng(seed=21)

    agreements = 0
    for cand in _random_members(P, rng, count):
        assert not sign_table(cand, P).chiral_feasible

        for i, j in combinations(range(P.k), 2):
            try:
                d_sign, g_sign = sign_agreement(cand, P, i, j)
            except InconclusiveD:
                continue
            assert d_sign == g_sign
            agreements += 1

    assert agreements > 0


def test_sign_invariance():
    actx = ExactArithmeticContext()
    rng = np.random.default_rng(seed=22)

    for P in [chiral_five(actx), nonchiral_five(actx)]:
        for cand in _random_members(P, rng, 50):
            table = sign_table(cand, P)

            for _ in range(2):
                mu = Fraction(int(rng.choice([-7, -2, -1, 3, 5])),
                        int(rng.integers(1, 10)))
                scaled = sign_table(cand.scaled(mu), P)
                assert np.array_equal(scaled.products, table.products)

            flipped = cand.flipped()
            assert np.array_equal(sign_table(flipped, P).products, table.products)

            for i, (u, v) in enumerate(P):
                assert actx.sign(g(flipped, P, i) + g(cand, P, i)) == 0

                on_wall = actx.is_zero(cand.X @ u) or actx.is_zero(v @ cand.X)
                assert (actx.sign(g(cand, P, i)) == 0) == on_wall

# }}}


if __name__ == "__main__":
    import sys
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        pytest.main([__file__])

# vim: fdm=marker
