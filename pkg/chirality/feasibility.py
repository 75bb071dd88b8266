"""
.. currentmodule:: chirality.feasibility

Strict homogeneous feasibility: find :math:`x` with :math:`Ax > 0`.

.. autofunction:: strictly_feasible_point
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
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from chirality.arithmetic import ArithmeticContext, resolve


logger = logging.getLogger(__name__)


def _is_strict_solution(actx: ArithmeticContext,
        rows: np.ndarray, x: np.ndarray) -> bool:
    return all(actx.sign(val) > 0 for val in rows @ x)


# {{{ float proposal

def _lp_proposal(rows: np.ndarray) -> Optional[np.ndarray]:
    """Maximize the margin *s* subject to ``rows @ x >= s`` in the box
    :math:`[-1, 1]^n`, with rows scaled to unit length.
    """
    from scipy.optimize import linprog

    frows = np.asarray(rows, dtype=np.float64)
    norms = np.linalg.norm(frows, axis=1)
    if np.any(norms == 0):
        return None
    frows = frows / norms[:, None]

    m, n = frows.shape
    c = np.zeros(n + 1)
    c[-1] = -1
    a_ub = np.hstack([-frows, np.ones((m, 1))])
    b_ub = np.zeros(m)
    bounds = [(-1, 1)] * n + [(None, 1)]

    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        return None

    return res.x[:n]

# }}}


# {{{ exact certificate

def _exact_interior_point(actx: ArithmeticContext,
        rows: np.ndarray) -> Optional[np.ndarray]:
    """Sum of all extreme rays of the closed cone ``rows @ x >= 0``,
    restricted to the row space of *rows*. The strict system is feasible
    iff this sum satisfies it.
    """
    n = rows.shape[1]
    r = actx.rank(rows)
    if r == 0:
        return None

    # basis of the row space, in original coordinates
    basis_cols = []
    for row in rows:
        candidate = basis_cols + [row]
        if actx.rank(np.column_stack(candidate)) == len(candidate):
            basis_cols = candidate
        if len(basis_cols) == r:
            break
    basis = np.column_stack(basis_cols)
    reduced = rows @ basis

    one = actx.scalar(1)
    if r == 1:
        rays = [actx.array([one]), actx.array([-one])]
    else:
        rays = []
        for subset in combinations(range(len(reduced)), r - 1):
            kernel = actx.nullspace(reduced[list(subset)])
            if kernel.shape[1] != 1:
                continue
            rays.extend([kernel[:, 0], -kernel[:, 0]])

    total = actx.zeros(r)
    for ray in rays:
        if all(actx.sign(val) >= 0 for val in reduced @ ray):
            total = total + ray

    if actx.is_zero(total) or not _is_strict_solution(actx, reduced, total):
        return None

    result = basis @ total
    assert result.shape == (n,)
    return result

# }}}


def strictly_feasible_point(rows: np.ndarray,
        actx: Optional[ArithmeticContext] = None) -> Optional[np.ndarray]:
    """Return *x* with every entry of ``rows @ x`` strictly positive, or
    *None* if no such *x* exists.

    A margin-maximizing linear program (:func:`scipy.optimize.linprog`)
    proposes a point, which is rounded to small rationals and checked. In
    exact arithmetic, a failed proposal falls back to an extreme-ray
    enumeration that decides feasibility exactly. The result is scaled to
    small integers where possible.
    """
    actx = resolve(actx)
    rows = np.asarray(rows)
    if rows.ndim != 2:
        raise ValueError(f"expected a 2D constraint matrix, got {rows.shape}")
    if len(rows) == 0:
        return actx.array([1] + [0]*(rows.shape[1] - 1))

    if any(actx.is_zero(row) for row in rows):
        return None

    proposal = _lp_proposal(rows)
    if proposal is not None:
        if not actx.exact:
            x = actx.array(proposal)
            if _is_strict_solution(actx, rows, x):
                return actx.normalize(x, keep_orientation=True)
        else:
            for max_denominator in [1, 4, 16, 256, 10**4, 10**8]:
                x = actx.array([Fraction(xi).limit_denominator(max_denominator)
                    for xi in proposal])
                if (not actx.is_zero(x)
                        and _is_strict_solution(actx, rows, x)):
                    return actx.normalize(x, keep_orientation=True)

    if not actx.exact:
        return None

    logger.debug("rational rounding failed, enumerating extreme rays "
            "(%d constraints in dimension %d)", *rows.shape)
    x = _exact_interior_point(actx, rows)
    if x is None:
        return None
    return actx.normalize(x, keep_orientation=True)

# vim: foldmethod=marker
