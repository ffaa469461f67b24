"""Dense vectors and matrices over a clodum.

The two products are::

    maxmul(A, B)[i, j] = max_k  A[i, k] mult B[k, j]
    minmul(A, B)[i, j] = min_k  A[i, k] dual_mult B[k, j]

A vector dilation ``x -> M maxmul x`` has a unique adjoint erosion, built
from the scalar residual of ``mult``::

    vec_adjoint_erosion(M, y)[j] = min_i adj_erosion(M[i, j], y[i])

so that ``vec_dilation(M, x) <= y`` iff ``x <= vec_adjoint_erosion(M, y)``.
Over a clog the same erosion is ``minmul(adjoint_matrix(M), y)``.
"""

from __future__ import annotations

import numpy as np

from .clodum import Clodum, make_clodum
from .errors import ClodumMismatchError, DimensionError, UnsupportedOperationError


def _as_clodum(c) -> Clodum:
    return c if isinstance(c, Clodum) else make_clodum(c)


class _WArray:
    __slots__ = ("clodum", "data")
    _ndim = 0

    def __init__(self, data, clodum, validate=True):
        c = _as_clodum(clodum)
        arr = np.array(data, dtype=float)
        arr = self._coerce(arr)
        if validate:
            c.validate(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "clodum", c)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def shape(self):
        return self.data.shape

    def tolist(self):
        return self.data.tolist()

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __getitem__(self, idx):
        out = self.data[idx]
        return float(out) if np.ndim(out) == 0 else out

    def _wrap(self, data):
        return type(self)(data, self.clodum, validate=False)

    def _check(self, other):
        if not isinstance(other, _WArray):
            other = type(self)(other, self.clodum)
        _same_clodum(self, other)
        if other.shape != self.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return other

    def __or__(self, other):
        other = self._check(other)
        return self._wrap(np.maximum(self.data, other.data))

    def __and__(self, other):
        other = self._check(other)
        return self._wrap(np.minimum(self.data, other.data))

    def __le__(self, other):
        other = self._check(other)
        return bool(np.all(self.clodum.leq(self.data, other.data)))

    def __ge__(self, other):
        other = self._check(other)
        return bool(np.all(self.clodum.leq(other.data, self.data)))

    def __eq__(self, other):
        if not isinstance(other, _WArray):
            return NotImplemented
        return (self.clodum.name == other.clodum.name and self.shape == other.shape
                and bool(np.array_equal(self.data, other.data)))

    __hash__ = None

    def isclose(self, other) -> bool:
        """Equality with the clodum tolerance; infinities must match exactly."""
        other = self._check(other)
        return bool(np.all(self.clodum.isclose(self.data, other.data)))

    def __repr__(self):
        body = np.array2string(self.data, separator=", ")
        return f"{type(self).__name__}({body}, clodum={self.clodum.name!r})"


class WVector(_WArray):
    """Column vector of scalars over a clodum."""

    __slots__ = ()

    @staticmethod
    def _coerce(arr):
        if arr.ndim == 2 and 1 in arr.shape:
            arr = arr.reshape(-1)
        if arr.ndim != 1 or arr.size == 0:
            raise DimensionError(f"a vector needs a nonempty 1-D array, got shape {arr.shape}")
        return arr

    def __len__(self):
        return self.data.shape[0]

    def __iter__(self):
        return iter(self.data.tolist())


class WMatrix(_WArray):
    """Dense rectangular matrix of scalars over a clodum."""

    __slots__ = ()

    @staticmethod
    def _coerce(arr):
        if arr.ndim != 2 or arr.size == 0:
            raise DimensionError(f"a matrix needs a nonempty 2-D array, got shape {arr.shape}")
        return arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> "WMatrix":
        return self._wrap(self.data.T)

    def column(self, j) -> WVector:
        return WVector(self.data[:, j], self.clodum, validate=False)

    def row(self, i) -> WVector:
        return WVector(self.data[i, :], self.clodum, validate=False)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other):
        return maxmul(self, other)


def _same_clodum(*arrays):
    names = {a.clodum.name for a in arrays}
    if len(names) > 1:
        raise ClodumMismatchError(f"operands live in different cloda: {sorted(names)}")


def vector(data, clodum) -> WVector:
    return data if isinstance(data, WVector) else WVector(data, clodum)


def matrix(data, clodum) -> WMatrix:
    return data if isinstance(data, WMatrix) else WMatrix(data, clodum)


def identity(clodum, n: int, dual: bool = False) -> WMatrix:
    """Unit of ``maxmul`` (``dual=False``) or of ``minmul`` (``dual=True``)."""
    c = _as_clodum(clodum)
    if dual:
        data = np.full((n, n), c.top)
        np.fill_diagonal(data, c.dual_unit)
    else:
        data = np.full((n, n), c.bottom)
        np.fill_diagonal(data, c.unit)
    return WMatrix(data, c, validate=False)


def bottom(clodum, shape):
    c = _as_clodum(clodum)
    cls = WVector if np.ndim(np.empty(shape)) == 1 else WMatrix
    return cls(np.full(shape, c.bottom), c, validate=False)


def top(clodum, shape):
    c = _as_clodum(clodum)
    cls = WVector if np.ndim(np.empty(shape)) == 1 else WMatrix
    return cls(np.full(shape, c.top), c, validate=False)


def _product(A, B, scalar_op, reduce):
    if not isinstance(A, WMatrix):
        raise TypeError("left operand must be a WMatrix")
    if not isinstance(B, (WMatrix, WVector)):
        raise TypeError("right operand must be a WMatrix or WVector")
    _same_clodum(A, B)
    b = B.data if isinstance(B, WMatrix) else B.data[:, None]
    if A.cols != b.shape[0]:
        raise DimensionError(f"inner dimensions differ: {A.shape} and {B.shape}")
    terms = scalar_op(A.data[:, :, None], b[None, :, :])
    out = reduce(np.asarray(terms), axis=1)
    if isinstance(B, WVector):
        return WVector(out[:, 0], A.clodum, validate=False)
    return WMatrix(out, A.clodum, validate=False)


def maxmul(A: WMatrix, B):
    """Max-mult product ``A maxmul B`` of a matrix with a matrix or vector."""
    return _product(A, B, A.clodum.mult, np.max)


def minmul(A: WMatrix, B):
    """Min-dual_mult product, the dual of :func:`maxmul`."""
    return _product(A, B, A.clodum.dual_mult, np.min)


def min_adj_product(A: WMatrix, B):
    """``{A # B}[i, j] = min_k adj_erosion(A[i, k], B[k, j])``."""
    return _product(A, B, A.clodum.adj_erosion, np.min)


def max_adj_product(A: WMatrix, B):
    """``{A # B}[i, j] = max_k adj_dilation(A[i, k], B[k, j])``."""
    return _product(A, B, A.clodum.adj_dilation, np.max)


def adjoint_matrix(A: WMatrix) -> WMatrix:
    """Conjugate transpose ``[conj(a_ji)]``."""
    if not A.clodum.self_conjugate:
        raise UnsupportedOperationError(f"{A.clodum.name} is not self-conjugate")
    return WMatrix(A.clodum.conjugate(A.data.T), A.clodum, validate=False)


def conjugate_vector(x: WVector) -> WVector:
    return WVector(x.clodum.conjugate(x.data), x.clodum, validate=False)


def vec_dilation(M: WMatrix, x: WVector) -> WVector:
    return maxmul(M, x)


def vec_adjoint_erosion(M: WMatrix, y: WVector) -> WVector:
    """Greatest ``x`` with ``M maxmul x <= y``."""
    return min_adj_product(M.T, y)


def vec_erosion(M: WMatrix, y: WVector) -> WVector:
    return minmul(M, y)


def vec_adjoint_dilation(M: WMatrix, x: WVector) -> WVector:
    """Least ``y`` with ``M minmul y >= x``."""
    return max_adj_product(M.T, x)


def elementwise_join(A, B):
    return A | B


def elementwise_meet(A, B):
    return A & B


def matrix_power(A: WMatrix, t: int, dual: bool = False, method: str = "sequential") -> WMatrix:
    """t-fold product of ``A`` with itself; ``t == 0`` gives the identity.

    ``method="squaring"`` uses repeated squaring; the result is the same
    since both products are associative.
    """
    if not A.is_square():
        raise DimensionError(f"matrix power needs a square matrix, got {A.shape}")
    if t < 0:
        raise ValueError("power must be nonnegative")
    mul = minmul if dual else maxmul
    result = identity(A.clodum, A.rows, dual=dual)
    if method == "sequential":
        for _ in range(t):
            result = mul(A, result)
        return result
    if method != "squaring":
        raise ValueError(f"unknown method {method!r}")
    base = A
    while t:
        if t & 1:
            result = mul(result, base)
        base = mul(base, base)
        t >>= 1
    return result


def matrix_powers(A: WMatrix, upto: int, dual: bool = False):
    """List ``[A^(0), A^(1), ..., A^(upto)]``."""
    mul = minmul if dual else maxmul
    out = [identity(A.clodum, A.rows, dual=dual)]
    for _ in range(upto):
        out.append(mul(A, out[-1]))
    return out


def scalar_times(c: float, A, dual: bool = False):
    """``c mult A`` elementwise (``dual_mult`` when ``dual``)."""
    op = A.clodum.dual_mult if dual else A.clodum.mult
    return type(A)(op(c, A.data), A.clodum, validate=False)
