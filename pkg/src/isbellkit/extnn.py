"""The extended non-negative reals [0, inf].

Values are plain floats (or float64 arrays) with ``math.inf`` standing for
infinity.  Everything built on top is a finite composition of ``min``,
``max``, ``+`` and truncated difference, so dyadic inputs give exact
results and no roundoff accumulates.

Conventions::

    a + inf = inf
    inf - a = inf      (a finite)
    a - inf = 0
    inf - inf = 0      (so the asymmetric metric has d(inf, inf) = 0)
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .errors import InvalidValue

INF = math.inf

#: default comparison tolerance
EPS = 1e-9


def ext(value) -> float:
    """Coerce to a validated element of [0, inf]."""
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "+inf", "∞"):
            return INF
        value = float(value)
    v = float(value)
    if math.isnan(v) or v < 0:
        raise InvalidValue(f"{value!r} is not in [0, inf]")
    return v


def ext_array(values, shape=None) -> np.ndarray:
    """Validated float64 array of [0, inf] values."""
    if isinstance(values, np.ndarray) and values.dtype == np.float64:
        arr = values.copy()
    else:
        arr = np.array(values, dtype=object)
        arr = np.vectorize(ext, otypes=[np.float64])(arr) if arr.size else \
            np.zeros(arr.shape, dtype=np.float64)
    if np.isnan(arr).any() or (arr < 0).any():
        raise InvalidValue("values must lie in [0, inf]")
    if shape is not None and arr.shape != tuple(shape):
        raise InvalidValue(f"expected shape {tuple(shape)}, got {arr.shape}")
    return arr


def monus(b, a):
    """Truncated difference ``b ⊖ a = max(b - a, 0)``.

    Works elementwise on arrays; returns a float for scalar input.
    """
    b = np.asarray(b, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        out = np.where(b > a, b - a, 0.0)
    return float(out) if out.ndim == 0 else out


def dist_interval(a, b):
    """Asymmetric metric on [0, inf]: the distance from ``a`` to ``b``."""
    return monus(b, a)


def sup(values: Iterable[float]) -> float:
    """Supremum in [0, inf]; the empty supremum is 0."""
    return max(values, default=0.0)


def inf(values: Iterable[float]) -> float:
    """Infimum in [0, inf]; the empty infimum is infinity."""
    return min(values, default=INF)


def close(a, b, eps: float = EPS):
    """Equality up to ``eps``; infinities only equal each other."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        out = (a == b) | (np.abs(a - b) <= eps)
    return bool(out) if out.ndim == 0 else out


def allclose(a, b, eps: float = EPS) -> bool:
    return bool(np.all(close(a, b, eps)))


def max_deviation(a, b) -> float:
    """Largest elementwise gap, with ``inf`` when infinities disagree."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0:
        return 0.0
    same = a == b
    with np.errstate(invalid="ignore"):
        gap = np.where(same, 0.0, np.abs(a - b))
    return float(np.max(gap))


def to_json(value):
    """JSON encoding: numbers stay numbers, infinity becomes ``"inf"``."""
    if isinstance(value, np.ndarray):
        return [to_json(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    v = float(value)
    if math.isinf(v):
        return "inf"
    return int(v) if v.is_integer() else v


def from_json(value):
    if isinstance(value, (list, tuple)):
        return [from_json(v) for v in value]
    return ext(value)
