"""Scalar algebras on complete chains of extended reals.

A clodum is a complete lattice ``(K, max, min)`` carrying two commutative
monoid operations: ``mult`` distributes over max and has the least element as
its null, ``dual_mult`` distributes over min and has the greatest element as
its null.  Four instances are built in:

========== ============== ======== ===================== ===== =====
name       carrier        mult     dual_mult             unit  dual
========== ============== ======== ===================== ===== =====
max-plus   [-inf, +inf]   a + b    a +' b                0     0
max-times  [0, +inf]      a * b    a *' b                1     1
max-min    [0, 1]         min      max                   1     0
product    [0, 1]         a * b    a + b - a * b         1     0
========== ============== ======== ===================== ===== =====

Scalars are plain floats.  The infinite sentinels are IEEE infinities but
every product goes through an explicit case table, so ``-inf + inf`` is
``-inf`` under ``mult`` and ``+inf`` under ``dual_mult`` instead of NaN.

All operations accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .errors import CarrierError, ConfigurationError, UnsupportedOperationError

DEFAULT_TOLERANCE = 1e-9

INF = math.inf


def _ret(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def _arr(x):
    return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class Clodum:
    """Base class; use :func:`make_clodum` to obtain an instance."""

    name: str
    bottom: float
    top: float
    unit: float
    dual_unit: float
    is_clog: bool
    self_conjugate: bool
    tol: float = DEFAULT_TOLERANCE

    # -- lattice ---------------------------------------------------------
    @property
    def carrier(self) -> str:
        b = lambda v: _fmt(v) if math.isinf(v) else f"{v:g}"
        return f"[{b(self.bottom)}, {b(self.top)}]"

    def join(self, a, b):
        return _ret(np.maximum(_arr(a), _arr(b)))

    def meet(self, a, b):
        return _ret(np.minimum(_arr(a), _arr(b)))

    # -- the two multiplications ------------------------------------------
    def mult(self, a, b):
        raise NotImplementedError

    def dual_mult(self, a, b):
        raise NotImplementedError

    # -- residuals -------------------------------------------------------
    def adj_erosion(self, a, w):
        """``sup{v : a mult v <= w}``."""
        raise NotImplementedError

    def adj_dilation(self, a, v):
        """``inf{w : a dual_mult w >= v}``."""
        raise NotImplementedError

    # -- conjugation and roots -------------------------------------------
    def conjugate(self, a):
        if not self.self_conjugate:
            raise UnsupportedOperationError(f"{self.name} has no conjugation")
        return self._conjugate(_arr(a))

    def _conjugate(self, a):
        raise NotImplementedError

    def kth_root(self, a, k: int):
        """The ``x`` with ``x mult x mult ... (k times) == a``."""
        raise NotImplementedError

    def dual_kth_root(self, a, k: int):
        """The ``x`` whose k-fold ``dual_mult`` power is ``a``."""
        raise NotImplementedError

    def power(self, a, k: int):
        """k-fold ``mult`` of ``a`` with itself; ``power(a, 0) == unit``."""
        out = np.full(np.shape(a), self.unit)
        for _ in range(k):
            out = self.mult(out, a)
        return _ret(out)

    def dual_power(self, a, k: int):
        out = np.full(np.shape(a), self.dual_unit)
        for _ in range(k):
            out = self.dual_mult(out, a)
        return _ret(out)

    # -- comparisons -----------------------------------------------------
    def isclose(self, a, b):
        """Elementwise equality: exact on infinities, ``tol`` abs+rel otherwise."""
        a, b = np.broadcast_arrays(_arr(a), _arr(b))
        finite = np.isfinite(a) & np.isfinite(b)
        with np.errstate(invalid="ignore"):
            near = np.abs(a - b) <= self.tol * (1.0 + np.maximum(np.abs(a), np.abs(b)))
        out = np.where(finite, near, a == b)
        return bool(out) if out.ndim == 0 else out

    def leq(self, a, b):
        """``a <= b`` up to tolerance, elementwise."""
        a, b = np.broadcast_arrays(_arr(a), _arr(b))
        out = (a <= b) | np.asarray(self.isclose(a, b))
        return bool(out) if out.ndim == 0 else out

    # -- parsing ---------------------------------------------------------
    def validate(self, a):
        """Return ``a`` as floats, raising :class:`CarrierError` if outside."""
        arr = _arr(a)
        if np.isnan(arr).any():
            raise CarrierError(f"NaN is not a {self.name} scalar")
        if (arr < self.bottom).any() or (arr > self.top).any():
            raise CarrierError(f"value outside {self.name} carrier {self.carrier}")
        return _ret(arr)

    def parse(self, token: str) -> float:
        t = token.strip().lower()
        if t in ("-inf", "-infinity", "-.inf"):
            value = -INF
        elif t in ("inf", "+inf", "infinity", "+infinity", ".inf", "+.inf"):
            value = INF
        else:
            try:
                value = float(t)
            except ValueError:
                raise CarrierError(f"cannot parse {token!r} as a scalar") from None
            if math.isnan(value) or math.isinf(value):
                raise CarrierError(f"cannot parse {token!r} as a scalar")
        return self.validate(value)

    def format(self, a: float) -> str:
        return _fmt(a)

    def with_tolerance(self, tol: float) -> "Clodum":
        return dataclasses.replace(self, tol=float(tol))

    def __repr__(self):
        return f"<clodum {self.name}>"


def _fmt(a) -> str:
    a = float(a)
    if a == INF:
        return "+inf"
    if a == -INF:
        return "-inf"
    return repr(a)


@dataclass(frozen=True, repr=False)
class MaxPlus(Clodum):
    name: str = "max-plus"
    bottom: float = -INF
    top: float = INF
    unit: float = 0.0
    dual_unit: float = 0.0
    is_clog: bool = True
    self_conjugate: bool = True

    def mult(self, a, b):
        a, b = _arr(a), _arr(b)
        with np.errstate(invalid="ignore"):
            s = a + b
        return _ret(np.where((a == -INF) | (b == -INF), -INF, s))

    def dual_mult(self, a, b):
        a, b = _arr(a), _arr(b)
        with np.errstate(invalid="ignore"):
            s = a + b
        return _ret(np.where((a == INF) | (b == INF), INF, s))

    def _conjugate(self, a):
        return _ret(-a)

    def adj_erosion(self, a, w):
        return self.dual_mult(self._conjugate(_arr(a)), w)

    def adj_dilation(self, a, v):
        return self.mult(self._conjugate(_arr(a)), v)

    def kth_root(self, a, k):
        return _ret(_arr(a) / k)

    dual_kth_root = kth_root


@dataclass(frozen=True, repr=False)
class MaxTimes(Clodum):
    name: str = "max-times"
    bottom: float = 0.0
    top: float = INF
    unit: float = 1.0
    dual_unit: float = 1.0
    is_clog: bool = True
    self_conjugate: bool = True

    def mult(self, a, b):
        a, b = _arr(a), _arr(b)
        with np.errstate(invalid="ignore"):
            p = a * b
        return _ret(np.where((a == 0) | (b == 0), 0.0, p))

    def dual_mult(self, a, b):
        a, b = _arr(a), _arr(b)
        with np.errstate(invalid="ignore"):
            p = a * b
        return _ret(np.where((a == INF) | (b == INF), INF, p))

    def _conjugate(self, a):
        with np.errstate(divide="ignore"):
            return _ret(np.where(a == INF, 0.0, np.where(a == 0, INF, 1.0 / np.where(a == 0, 1.0, a))))

    def adj_erosion(self, a, w):
        return self.dual_mult(self._conjugate(_arr(a)), w)

    def adj_dilation(self, a, v):
        return self.mult(self._conjugate(_arr(a)), v)

    def kth_root(self, a, k):
        return _ret(np.power(_arr(a), 1.0 / k))

    dual_kth_root = kth_root


@dataclass(frozen=True, repr=False)
class MaxMin(Clodum):
    name: str = "max-min"
    bottom: float = 0.0
    top: float = 1.0
    unit: float = 1.0
    dual_unit: float = 0.0
    is_clog: bool = False
    self_conjugate: bool = True

    def mult(self, a, b):
        return _ret(np.minimum(_arr(a), _arr(b)))

    def dual_mult(self, a, b):
        return _ret(np.maximum(_arr(a), _arr(b)))

    def _conjugate(self, a):
        return _ret(1.0 - a)

    def adj_erosion(self, a, w):
        a, w = _arr(a), _arr(w)
        return _ret(np.where(w >= a, 1.0, w))

    def adj_dilation(self, a, v):
        a, v = _arr(a), _arr(v)
        return _ret(np.where(v > a, v, 0.0))

    def kth_root(self, a, k):
        return _ret(_arr(a))

    dual_kth_root = kth_root


@dataclass(frozen=True, repr=False)
class ProductTNorm(Clodum):
    name: str = "product-tnorm"
    bottom: float = 0.0
    top: float = 1.0
    unit: float = 1.0
    dual_unit: float = 0.0
    is_clog: bool = False
    self_conjugate: bool = True

    def mult(self, a, b):
        return _ret(_arr(a) * _arr(b))

    def dual_mult(self, a, b):
        a, b = _arr(a), _arr(b)
        # this form is exact whenever either argument is 0 or 1
        return _ret(np.clip(1.0 - (1.0 - a) * (1.0 - b), 0.0, 1.0))

    def _conjugate(self, a):
        return _ret(1.0 - a)

    def adj_erosion(self, a, w):
        a, w = _arr(a), _arr(w)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.minimum(w / np.where(a == 0, 1.0, a), 1.0)
        return _ret(np.where(a == 0, 1.0, q))

    def adj_dilation(self, a, v):
        a, v = _arr(a), _arr(v)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.maximum((v - a) / np.where(a == 1, 1.0, 1.0 - a), 0.0)
        return _ret(np.where(a == 1, 0.0, q))

    def kth_root(self, a, k):
        return _ret(np.power(_arr(a), 1.0 / k))

    def dual_kth_root(self, a, k):
        return _ret(1.0 - np.power(1.0 - _arr(a), 1.0 / k))


_BUILTINS = {
    "max-plus": MaxPlus,
    "max-times": MaxTimes,
    "max-min": MaxMin,
    "product-tnorm": ProductTNorm,
}

_ALIASES = {"maxplus": "max-plus", "max-sum": "max-plus", "maxtimes": "max-times",
            "max-product": "max-times", "maxmin": "max-min", "product": "product-tnorm"}

CLODUM_NAMES = tuple(_BUILTINS)


def make_clodum(name: str, tol: float = DEFAULT_TOLERANCE) -> Clodum:
    """Return the built-in clodum called ``name``.

    >>> make_clodum("max-plus").mult(3.0, 5.0)
    8.0
    """
    if isinstance(name, Clodum):
        return name.with_tolerance(tol) if tol != name.tol else name
    key = _ALIASES.get(name, name)
    try:
        cls = _BUILTINS[key]
    except KeyError:
        raise ConfigurationError(
            f"unknown clodum {name!r}; choose one of {', '.join(CLODUM_NAMES)}"
        ) from None
    return cls(tol=float(tol))


def scalar_adj_erosion(c: Clodum, a, w):
    return c.adj_erosion(a, w)


def conjugate(c: Clodum, a):
    return c.conjugate(a)
