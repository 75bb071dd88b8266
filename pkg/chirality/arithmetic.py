r"""
.. currentmodule:: chirality

Arithmetic contexts
-------------------

All geometric predicates in this package are sign tests. An
:class:`ArithmeticContext` decides how the numbers entering those tests are
represented and how the handful of linear-algebra kernels the package needs
(rank, null space, determinant, inverse) are carried out.

* :class:`ExactArithmeticContext` (the default) stores values as
  :class:`fractions.Fraction` in :class:`numpy.ndarray`\ s of ``dtype=object``
  and delegates elimination to :class:`sympy.polys.matrices.DomainMatrix`
  over :data:`sympy.QQ`. Every sign it reports is exact.
* :class:`FloatArithmeticContext` stores :class:`numpy.float64` arrays and
  uses :mod:`numpy.linalg` and :func:`scipy.linalg.null_space`, with an
  absolute tolerance for sign decisions.

.. autoclass:: ArithmeticContext
.. autoclass:: ExactArithmeticContext
.. autoclass:: FloatArithmeticContext

.. autofunction:: register_arithmetic_context
.. autofunction:: make_arithmetic_context
.. autofunction:: get_arithmetic_context
.. autofunction:: set_arithmetic_context
.. autofunction:: arithmetic_context
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
import os
from abc import ABC, abstractmethod
from contextlib import contextmanager
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Dict, Iterator, List, Optional, Tuple, Type, Union

import numpy as np


logger = logging.getLogger(__name__)

Scalar = Any
ScalarLike = Union[int, float, str, Fraction]


# {{{ scalar conversion

def to_fraction(x: Any) -> Fraction:
    """Convert *x* to a canonical :class:`~fractions.Fraction`.

    Accepts integers, :class:`~fractions.Fraction`, finite floats (converted
    exactly), objects with *numerator* and *denominator* (e.g. elements of
    :data:`sympy.QQ`) and strings such as ``"3"``, ``"-1.25"`` or ``"7/3"``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise TypeError(f"refusing to convert boolean '{x}' to a rational")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        if not np.isfinite(x):
            raise ValueError(f"non-finite value '{x}' cannot be made exact")
        return Fraction(float(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse '{x}' as a rational number") from exc
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))

    raise TypeError(f"cannot convert object of type '{type(x).__name__}' "
            "to a rational number")

# }}}


# {{{ ArithmeticContext

class ArithmeticContext(ABC):
    """An interface over the number representation used by all predicates.

    .. attribute:: name
    .. attribute:: exact

        *True* if every sign this context reports is exact.

    .. automethod:: scalar
    .. automethod:: array
    .. automethod:: zeros
    .. automethod:: eye
    .. automethod:: sign
    .. automethod:: is_zero
    .. automethod:: rank
    .. automethod:: nullspace
    .. automethod:: det
    .. automethod:: inv
    .. automethod:: solve
    .. automethod:: normalize
    .. automethod:: to_float
    """

    name = "abstract"
    exact = False

    @classmethod
    def is_available(cls) -> bool:
        return True

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"

    @abstractmethod
    def scalar(self, x: Any) -> Scalar:
        """Convert *x* to this context's scalar type."""

    def array(self, data: Any) -> np.ndarray:
        """Convert the nested sequence *data* to an array of scalars."""
        ary = np.asarray(data, dtype=object)
        result = np.empty(ary.shape, dtype=object)
        for idx in np.ndindex(*ary.shape):
            result[idx] = self.scalar(ary[idx])

        return self._finalize(result)

    def _finalize(self, ary: np.ndarray) -> np.ndarray:
        return ary

    def zeros(self, shape: Union[int, Tuple[int, ...]]) -> np.ndarray:
        return self.array(np.zeros(shape, dtype=np.int64))

    def eye(self, n: int) -> np.ndarray:
        return self.array(np.eye(n, dtype=np.int64))

    @abstractmethod
    def sign(self, x: Scalar) -> int:
        """Return -1, 0 or +1."""

    def is_zero(self, x: Any) -> bool:
        """*True* if the scalar or every entry of the array *x* vanishes."""
        if isinstance(x, np.ndarray):
            return all(self.sign(xi) == 0 for xi in x.flat)
        return self.sign(x) == 0

    def signs(self, x: np.ndarray) -> np.ndarray:
        return np.array([self.sign(xi) for xi in np.asarray(x).flat],
                dtype=np.int64).reshape(np.shape(x))

    @abstractmethod
    def rank(self, mat: np.ndarray) -> int:
        pass

    @abstractmethod
    def nullspace(self, mat: np.ndarray) -> np.ndarray:
        """Return an array of shape ``(ncols, d)`` whose columns span the
        right null space of *mat*.
        """

    @abstractmethod
    def det(self, mat: np.ndarray) -> Scalar:
        pass

    @abstractmethod
    def inv(self, mat: np.ndarray) -> np.ndarray:
        pass

    def solve(self, mat: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
        """Return some *x* with ``mat @ x == rhs``, or *None* if the system is
        inconsistent. The choice among multiple solutions is deterministic.
        """
        mat = np.asarray(mat)
        rhs = np.asarray(rhs).reshape(-1, 1)
        kernel = self.nullspace(np.hstack([mat, -rhs]))
        for k in range(kernel.shape[1]):
            vec = kernel[:, k]
            if self.sign(vec[-1]) != 0:
                return vec[:-1] / vec[-1]

        return None

    @abstractmethod
    def normalize(self, vec: np.ndarray, *,
            keep_orientation: bool = False) -> np.ndarray:
        """Return a representative of the projective point *vec* with small
        entries and a positive last nonzero coordinate. With
        *keep_orientation*, only positive rescaling is used.
        """

    def to_float(self, ary: Any) -> np.ndarray:
        return np.asarray(ary, dtype=np.float64)

# }}}


# {{{ exact arithmetic

def _to_domain_matrix(mat: np.ndarray) -> Any:
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    nrows, ncols = mat.shape
    rows = []
    for i in range(nrows):
        row = []
        for j in range(ncols):
            f = to_fraction(mat[i, j])
            row.append(QQ(f.numerator, f.denominator))
        rows.append(row)

    return DomainMatrix(rows, (nrows, ncols), QQ)


def _from_domain_matrix(dm: Any) -> np.ndarray:
    nrows, ncols = dm.shape
    result = np.empty((nrows, ncols), dtype=object)
    for i, row in enumerate(dm.to_list()):
        for j, entry in enumerate(row):
            result[i, j] = to_fraction(entry)

    return result


class ExactArithmeticContext(ArithmeticContext):
    r"""Arbitrary-precision rational arithmetic.

    Scalars are canonical :class:`~fractions.Fraction`\ s (reduced, positive
    denominator). Elimination is done by
    :class:`sympy.polys.matrices.DomainMatrix` over :data:`sympy.QQ`, so the
    null space basis is the one read off the reduced row echelon form and
    therefore reproducible across runs and platforms.
    """

    name = "exact"
    exact = True

    @classmethod
    def is_available(cls) -> bool:
        try:
            import sympy  # noqa: F401
            return True
        except ImportError:
            return False

    def scalar(self, x: Any) -> Fraction:
        return to_fraction(x)

    def sign(self, x: Scalar) -> int:
        return (x > 0) - (x < 0)

    def rank(self, mat: np.ndarray) -> int:
        mat = np.asarray(mat, dtype=object)
        if mat.size == 0:
            return 0
        return int(_to_domain_matrix(mat).rank())

    def rref(self, mat: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
        """Return the reduced row echelon form of *mat* and its pivot columns."""
        rref, pivots = _to_domain_matrix(np.asarray(mat, dtype=object)).rref()
        return _from_domain_matrix(rref), tuple(pivots)

    def nullspace(self, mat: np.ndarray) -> np.ndarray:
        mat = np.asarray(mat, dtype=object)
        nrows, ncols = mat.shape
        if nrows == 0:
            return self.eye(ncols)

        rref, pivots = self.rref(mat)
        free = [j for j in range(ncols) if j not in pivots]

        basis = self.zeros((ncols, len(free)))
        for k, f in enumerate(free):
            basis[f, k] = Fraction(1)
            for r, p in enumerate(pivots):
                basis[p, k] = -rref[r, f]

        return basis

    def det(self, mat: np.ndarray) -> Fraction:
        mat = np.asarray(mat, dtype=object)
        if mat.shape == (3, 3):
            return (mat[0, 0]*(mat[1, 1]*mat[2, 2] - mat[1, 2]*mat[2, 1])
                    - mat[0, 1]*(mat[1, 0]*mat[2, 2] - mat[1, 2]*mat[2, 0])
                    + mat[0, 2]*(mat[1, 0]*mat[2, 1] - mat[1, 1]*mat[2, 0]))
        return to_fraction(_to_domain_matrix(mat).det())

    def inv(self, mat: np.ndarray) -> np.ndarray:
        mat = np.asarray(mat, dtype=object)
        if self.det(mat) == 0:
            raise ValueError("cannot invert a singular matrix")
        return _from_domain_matrix(_to_domain_matrix(mat).inv())

    def normalize(self, vec: np.ndarray, *,
            keep_orientation: bool = False) -> np.ndarray:
        entries = [to_fraction(x) for x in np.asarray(vec).flat]
        if all(x == 0 for x in entries):
            raise ValueError("cannot normalize the zero vector")

        lcm = reduce(lambda a, b: a*b // gcd(a, b),
                (x.denominator for x in entries), 1)
        ints = [int(x*lcm) for x in entries]
        divisor = reduce(gcd, (abs(x) for x in ints if x), 0)
        last = [x for x in ints if x][-1]
        if last < 0 and not keep_orientation:
            divisor = -divisor

        return self.array([Fraction(x, divisor) for x in ints]).reshape(
                np.shape(vec))

# }}}


# {{{ floating point arithmetic

class FloatArithmeticContext(ArithmeticContext):
    """Double precision arithmetic with an absolute sign tolerance *tol*.

    Rank decisions scale *tol* by the largest entry of the matrix.
    """

    name = "float"
    exact = False

    def __init__(self, tol: float = 1.0e-9) -> None:
        if tol < 0:
            raise ValueError(f"tolerance must be nonnegative, got {tol}")
        self.tol = tol

    def __repr__(self) -> str:
        return f"{type(self).__name__}(tol={self.tol})"

    def scalar(self, x: Any) -> float:
        if isinstance(x, (float, np.floating)):
            result = float(x)
        else:
            result = float(to_fraction(x))

        if not np.isfinite(result):
            raise ValueError(f"non-finite scalar '{x}'")
        return result

    def _finalize(self, ary: np.ndarray) -> np.ndarray:
        return ary.astype(np.float64)

    def sign(self, x: Scalar) -> int:
        x = float(x)
        if not np.isfinite(x):
            raise FloatingPointError(f"non-finite value '{x}' in sign test")
        if abs(x) <= self.tol:
            return 0
        return 1 if x > 0 else -1

    def _scaled_tol(self, mat: np.ndarray) -> float:
        return self.tol * max(1.0, float(np.abs(mat).max(initial=0.0)))

    def rank(self, mat: np.ndarray) -> int:
        mat = np.asarray(mat, dtype=np.float64)
        if mat.size == 0:
            return 0
        return int(np.linalg.matrix_rank(mat, tol=self._scaled_tol(mat)))

    def nullspace(self, mat: np.ndarray) -> np.ndarray:
        from scipy.linalg import null_space

        mat = np.asarray(mat, dtype=np.float64)
        if mat.shape[0] == 0:
            return np.eye(mat.shape[1])
        return null_space(mat, rcond=self.tol)

    def det(self, mat: np.ndarray) -> float:
        return float(np.linalg.det(np.asarray(mat, dtype=np.float64)))

    def inv(self, mat: np.ndarray) -> np.ndarray:
        mat = np.asarray(mat, dtype=np.float64)
        if self.sign(self.det(mat)) == 0:
            raise ValueError("cannot invert a singular matrix")
        return np.linalg.inv(mat)

    def normalize(self, vec: np.ndarray, *,
            keep_orientation: bool = False) -> np.ndarray:
        vec = np.asarray(vec, dtype=np.float64)
        nonzero = [x for x in vec.flat if self.sign(x) != 0]
        if not nonzero:
            raise ValueError("cannot normalize the zero vector")

        scale = np.abs(vec).max()
        if nonzero[-1] < 0 and not keep_orientation:
            scale = -scale
        return vec / scale

# }}}


# {{{ registry and global selection

_ARITHMETIC_CONTEXT_REGISTRY: Dict[str, Type[ArithmeticContext]] = {
        "exact": ExactArithmeticContext,
        "float": FloatArithmeticContext,
        }


def register_arithmetic_context(
        name: str, cls: Type[ArithmeticContext]) -> None:
    if name in _ARITHMETIC_CONTEXT_REGISTRY:
        raise ValueError(f"arithmetic context '{name}' already exists")

    _ARITHMETIC_CONTEXT_REGISTRY[name] = cls


def get_registered_arithmetic_contexts() -> List[str]:
    return sorted(_ARITHMETIC_CONTEXT_REGISTRY)


def make_arithmetic_context(
        name_or_ctx: Union[str, ArithmeticContext]) -> ArithmeticContext:
    if isinstance(name_or_ctx, ArithmeticContext):
        return name_or_ctx

    try:
        cls = _ARITHMETIC_CONTEXT_REGISTRY[name_or_ctx]
    except KeyError:
        raise ValueError(
                f"unknown arithmetic context: '{name_or_ctx}' (known: "
                f"{', '.join(get_registered_arithmetic_contexts())})") from None

    if not cls.is_available():
        raise RuntimeError(f"arithmetic context '{name_or_ctx}' is not available")

    return cls()


_CURRENT_CONTEXT: Optional[ArithmeticContext] = None


def get_arithmetic_context() -> ArithmeticContext:
    """Return the global arithmetic context.

    On first use, the context is chosen by the environment variable
    ``CHIRALITY_ARITHMETIC`` (``"exact"`` if unset).
    """
    global _CURRENT_CONTEXT

    if _CURRENT_CONTEXT is None:
        name = os.environ.get("CHIRALITY_ARITHMETIC", "exact")
        if name not in _ARITHMETIC_CONTEXT_REGISTRY:
            raise RuntimeError(
                    "unknown arithmetic context passed through environment "
                    f"variable 'CHIRALITY_ARITHMETIC': '{name}'")

        _CURRENT_CONTEXT = make_arithmetic_context(name)
        logger.debug("using arithmetic context %r", _CURRENT_CONTEXT)

    return _CURRENT_CONTEXT


def set_arithmetic_context(
        name_or_ctx: Union[str, ArithmeticContext, None]
        ) -> Optional[ArithmeticContext]:
    """Set the global arithmetic context and return the previous one.
    Passing *None* restores the environment-driven default.
    """
    global _CURRENT_CONTEXT

    prev = _CURRENT_CONTEXT
    _CURRENT_CONTEXT = (
            None if name_or_ctx is None
            else make_arithmetic_context(name_or_ctx))
    return prev


@contextmanager
def arithmetic_context(
        name_or_ctx: Union[str, ArithmeticContext]) -> Iterator[ArithmeticContext]:
    prev = set_arithmetic_context(name_or_ctx)
    try:
        yield get_arithmetic_context()
    finally:
        set_arithmetic_context(prev)


def resolve(actx: Optional[ArithmeticContext]) -> ArithmeticContext:
    return get_arithmetic_context() if actx is None else actx

# }}}


# {{{ runtime configuration

def get_thread_count(default: int = 1) -> int:
    """Worker cap from ``CHIRALITY_THREADS``."""
    value = os.environ.get("CHIRALITY_THREADS")
    if value is None:
        return default

    try:
        nthreads = int(value)
    except ValueError:
        raise RuntimeError(
                "environment variable 'CHIRALITY_THREADS' must be an integer, "
                f"got '{value}'") from None

    return max(1, nthreads)


def get_witness_budget(default: int = 50) -> int:
    value = os.environ.get("CHIRALITY_WITNESS_BUDGET")
    if value is None:
        return default

    try:
        return max(1, int(value))
    except ValueError:
        raise RuntimeError(
                "environment variable 'CHIRALITY_WITNESS_BUDGET' must be an "
                f"integer, got '{value}'") from None

# }}}

# vim: foldmethod=marker
