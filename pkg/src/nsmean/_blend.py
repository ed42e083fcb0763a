"""Blend kernels in the reduced variable x = (a - b) / (a + b), with A = 1.

For both bound families the geometric part is ``(1 + x^2)^(1/6)`` and the
convex part is ``1 + c(x)``; the blend with weight p is ``1 + g + p (c - g)``.
The ratio R(x) is the unique weight for which the blend equals M / A, so

    blend(p) - M = A * gap(x) * (p - R(x)).

``gap`` and ``R`` vanish or cancel to high order at x = 0, so below
``SERIES_SWITCH`` both come from exact rational Taylor coefficients.
"""

from __future__ import annotations

import enum
from fractions import Fraction

import numpy as np

from . import _coefficients as _c
from ._numerics import even_series
from .means import _asinh_kernel

SERIES_SWITCH = 0.2


class BoundFamily(enum.Enum):
    QA = "qa"  # Q^(1/3) A^(2/3) .. Q/3 + 2A/3
    CA = "ca"  # C^(1/6) A^(5/6) .. C/6 + 5A/6

    def __str__(self) -> str:
        return self.value


def _floats(table):
    return tuple(float(c) for c in table)


_RATIO = {BoundFamily.QA: _floats(_c.R_QA), BoundFamily.CA: _floats(_c.R_CA)}
_GAP = {BoundFamily.QA: _floats(_c.GAP_QA), BoundFamily.CA: _floats(_c.GAP_CA)}
_EXACT_R0 = {BoundFamily.QA: _c.R_QA[0], BoundFamily.CA: _c.R_CA[0]}
RATIO_AT_ZERO = {f: float(r) for f, r in _EXACT_R0.items()}


def geo_excess(x):
    return np.expm1(np.log1p(x * x) / 6.0)


def convex_excess(family: BoundFamily, x):
    x2 = x * x
    if family is BoundFamily.QA:
        return x2 / (3.0 * (1.0 + np.sqrt(1.0 + x2)))
    return x2 / 6.0


def gap(family: BoundFamily, x):
    """``convex - geometric`` in units of A; of order x^4 at the origin."""
    x = np.asarray(x, dtype=np.float64)
    series = even_series(x, _GAP[family], start=2)
    direct = convex_excess(family, x) - geo_excess(x)
    return np.where(x < SERIES_SWITCH, series, direct)


def _ratio_direct(family: BoundFamily, x):
    x2 = x * x
    t = np.cbrt(np.sqrt(1.0 + x2))
    ash = _asinh_kernel(x)
    if family is BoundFamily.QA:
        return 3.0 * (x - t * ash) / ((np.sqrt(1.0 + x2) - 3.0 * t + 2.0) * ash)
    return 6.0 * (x - t * ash) / ((x2 + 6.0 - 6.0 * t) * ash)


def ratio_tail(family: BoundFamily, x):
    """``R(x) - R(0)`` without cancelling against the constant term."""
    x = np.asarray(x, dtype=np.float64)
    with np.errstate(all="ignore"):
        series = even_series(x, _RATIO[family], start=1)
        direct = _ratio_direct(family, x) - RATIO_AT_ZERO[family]
    return np.where(x < SERIES_SWITCH, series, direct)


def ratio(family: BoundFamily, x):
    x = np.asarray(x, dtype=np.float64)
    with np.errstate(all="ignore"):
        series = even_series(x, _RATIO[family])
        direct = _ratio_direct(family, x)
    return np.where(x < SERIES_SWITCH, series, direct)


def ratio_series(family: BoundFamily, x):
    return even_series(np.asarray(x, dtype=np.float64), _RATIO[family])


def ratio_closed_form(family: BoundFamily, x):
    """The closed form alone, with no series branch (for crossover checks)."""
    with np.errstate(all="ignore"):
        return _ratio_direct(family, np.asarray(x, dtype=np.float64))


def weight_offset(family: BoundFamily, p: float) -> float:
    """``p - R(0)`` with R(0) taken as the exact rational, then rounded once."""
    return float(Fraction(p) - _EXACT_R0[family])


def weight_margin(family: BoundFamily, p: float, x):
    """``(blend(p) - M) / A``, correct in sign down to x -> 0."""
    return gap(family, x) * (weight_offset(family, p) - ratio_tail(family, x))
