"""Point pair instances shared by the tests."""

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

from fractions import Fraction

from chirality import PairSet


# {{{ five pairs

# first image shared by the two instances below
SQUARE_U = [(0, 0), (0, 4), (4, 0), (2, 1), (2, 3)]

# no chiral reconstruction: every corner fails the same-sign test
NONCHIRAL_V = [(2, 1), (2, 3), (4, 0), (0, 4), (1, 1)]

# moving the last v makes six corners pass
CHIRAL_V = [(2, 1), (2, 3), (4, 0), (0, 4), (4, 4)]

# 0-based corner (i, j) -> (D_lm, D_ln, D_mn) at (u_i, v_j) for the
# nonchiral instance, with l < m < n the remaining indices
NONCHIRAL_CORNER_VALUES = {
        (0, 1): (-16, -84, 20),
        (0, 2): (-32, -56, 32),
        (0, 3): (64, 40, -96),
        (0, 4): (112, -40, 32),
        (1, 0): (-16, -4, 12),
        (1, 2): (-32, 8, 32),
        (1, 3): (64, -24, -32),
        (1, 4): (-16, 24, -32),
        (2, 0): (16, -8, -12),
        (2, 1): (16, 24, -20),
        (2, 3): (-64, 36, 20),
        (2, 4): (-32, -12, 20),
        (3, 0): (16, -8, -4),
        (3, 1): (16, 8, -28),
        (3, 2): (32, -4, -28),
        (3, 4): (-16, -4, 28),
        (4, 0): (-16, 16, -16),
        (4, 1): (48, -16, 16),
        (4, 2): (32, -16, 16),
        (4, 3): (-32, 48, -16),
        }

CHIRAL_PASSING = {(1, 2), (1, 3), (2, 0), (2, 3), (3, 0), (3, 2)}

CHIRAL_CORNER_VALUES = {
        (1, 2): (-32, -64, -64),
        (1, 3): (64, 96, 64),
        (2, 0): (16, 16, 48),
        (2, 3): (-64, -144, -16),
        (3, 0): (16, 16, 32),
        (3, 2): (32, 32, 32),
        # fails: same-sign is not symmetric in (i, j)
        (2, 1): (16, -48, 16),
        }

# sixth pair of the nonchiral instance
NONCHIRAL_SIXTH = (
        (Fraction(504, 281), Fraction(300, 281), 1),
        (Fraction(68, 97), Fraction(300, 97), 1))


def nonchiral_five(actx=None) -> PairSet:
    return PairSet.from_affine(SQUARE_U, NONCHIRAL_V, actx)


def chiral_five(actx=None) -> PairSet:
    return PairSet.from_affine(SQUARE_U, CHIRAL_V, actx)


# generic instance with small integer surface data
CURVED_U = [(0, 1), (0, 0), (1, 1), (1, 2), (2, -1)]
CURVED_V = [(3, 0), (5, 0), (-1, -2), (-3, -2), (1, 4)]

CURVED_SIXTH = ((18, 11, 17), (-3, -12, 5))

# coefficient matrices of a determinantal representation of the curved
# instance's cubic surface
CURVED_REPRESENTATION = [
        [[-1, 0, 0], [1, 1, -1], [1, 0, 0]],
        [[-1, 0, 0], [-1, 1, 2], [3, 0, 0]],
        [[1, -1, -1], [0, 3, 1], [1, 1, 5]],
        [[4, -1, 1], [0, 0, -1], [2, 5, -5]],
        ]


def curved_five(actx=None) -> PairSet:
    return PairSet.from_affine(CURVED_U, CURVED_V, actx)

# }}}


# {{{ four pairs

def three_and_four_on_a_line(actx=None) -> PairSet:
    """Three *u*'s and all four *v*'s collinear."""
    return PairSet.from_affine(
            [(1, 0), (3, 0), (2, 0), (1, 1)],
            [(1, 0), (2, 0), (3, 0), (4, 0)], actx)


def square_and_four_on_a_line(actx=None) -> PairSet:
    return PairSet.from_affine(
            [(0, 0), (1, 0), (1, 1), (0, 1)],
            [(1, 0), (3, 0), (2, 0), (4, 0)], actx)

# }}}


# {{{ three pairs

def three_in_general_position(actx=None) -> PairSet:
    return PairSet.from_affine(
            [(0, 0), (1, 0), (0, 1)],
            [(0, 0), (2, 0), (0, 3)], actx)


def three_collinear(actx=None) -> PairSet:
    return PairSet.from_affine(
            [(0, 0), (1, 0), (2, 0)],
            [(0, 0), (1, 0), (3, 0)], actx)

# }}}


# {{{ synthetic scenes

def synthetic_scene(actx, points, t=(1, 0, 1)):
    """Project *points* through ``[I | 0]`` and ``[I | t]``.

    Returns the :class:`~chirality.Reconstruction` with positive scales
    for points with positive third coordinate.
    """
    import numpy as np

    from chirality import Camera, Reconstruction

    A1 = Camera(actx.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]), actx)
    A2 = Camera(actx.array([
        [1, 0, 0, t[0]], [0, 1, 0, t[1]], [0, 0, 1, t[2]]]), actx)
    Q = actx.array([list(p) + [1] for p in points])

    w1 = np.array([(A1.matrix @ q)[2] for q in Q])
    w2 = np.array([(A2.matrix @ q)[2] for q in Q])
    return Reconstruction(A1, A2, Q, w1, w2)


SCENE_POINTS = [(0, 0, 1), (1, 1, 3), (-1, 2, 3), (2, -1, 1), (1, 3, 2)]

# with these, the data matrix of the projected pairs has rank 7 and L_P is
# a line
MORE_SCENE_POINTS = [(2, 1, 2), (-1, -2, 4)]


def random_scene(actx, rng, npoints, in_front=True):
    """Random cameras ``[I | 0]`` and ``[G | t]`` with :math:`\\det G > 0`
    and *npoints* integer world points with distinct images.

    With *in_front*, every point has positive depth in both cameras;
    otherwise the depth signs are arbitrary.
    """
    import numpy as np

    from chirality import Camera, Reconstruction

    while True:
        G = rng.integers(-3, 4, size=(3, 3))
        t = rng.integers(-3, 4, size=3)
        if np.linalg.det(G) > 0.5 and np.any(t):
            break

    A1 = Camera(actx.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]), actx)
    A2 = Camera.from_parts(actx.array(G.tolist()), actx.array(t.tolist()), actx)

    Q, w1, w2 = [], [], []
    seen_u, seen_v = set(), set()
    while len(Q) < npoints:
        q = actx.array(rng.integers(-6, 7, size=3).tolist() + [1])
        a, b = A1.matrix @ q, A2.matrix @ q
        s1, s2 = actx.sign(a[2]), actx.sign(b[2])
        if s1 == 0 or s2 == 0:
            continue
        if in_front and (s1 < 0 or s2 < 0):
            continue

        key_u, key_v = tuple(actx.normalize(a)), tuple(actx.normalize(b))
        if key_u in seen_u or key_v in seen_v:
            continue
        seen_u.add(key_u)
        seen_v.add(key_v)

        Q.append(q)
        w1.append(a[2])
        w2.append(b[2])

    return Reconstruction(A1, A2, np.array(Q), np.array(w1), np.array(w2))

# }}}


# {{{ random pairs

def random_pairs(actx, rng, k, lo=-5, hi=5):
    """*k* pairs of lattice points, distinct within each image."""
    while True:
        u = rng.integers(lo, hi + 1, size=(k, 2))
        v = rng.integers(lo, hi + 1, size=(k, 2))
        if (len({tuple(p) for p in u.tolist()}) == k
                and len({tuple(p) for p in v.tolist()}) == k):
            return PairSet.from_affine(u.tolist(), v.tolist(), actx)

# }}}

# vim: foldmethod=marker
