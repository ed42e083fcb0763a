"""Bivariate means and the classical inequality chains they satisfy.

Every kernel here works on numpy arrays (scalars are 0-d arrays) so the grid
checks can run a million pairs at once; the scalar API wraps them.  Arguments
are put in canonical order ``hi >= lo`` before any arithmetic, which makes
symmetry exact, and every mean returns its argument exactly when ``a == b``.

Near the diagonal the normalized difference ``x = (a - b) / (a + b)`` is small
and the closed forms for M, L, P and T cancel; below ``SERIES_SWITCH`` they are
replaced by the Maclaurin series of ``mean / A``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _coefficients as _c
from ._numerics import even_series
from .errors import DegeneratePair, InvalidPair, OutOfDomain

SERIES_SWITCH = 1e-4
GENLOG_SNAP = 1e-12
CHAIN_SLACK = 1e-15  # relative to A
ULP_SLACK = 4

# x / arcsinh(x), x / artanh(x), x / arcsin(x), x / arctan(x) through x**4
_NS_SERIES = (1.0, 1.0 / 6.0, -17.0 / 360.0)
_LOG_SERIES = (1.0, -1.0 / 3.0, -4.0 / 45.0)
_P_SERIES = (1.0, -1.0 / 6.0, -17.0 / 360.0)
_T_SERIES = (1.0, 1.0 / 3.0, -4.0 / 45.0)

_ASINH_SWITCH = 2.0**-6
_ASINH_LARGE = 2.0**27
_ASINH_SERIES = (1.0, -1.0 / 6.0, 3.0 / 40.0, -5.0 / 112.0, 35.0 / 1152.0)
_LN2 = math.log(2.0)


class MeanKind(enum.Enum):
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    LOGARITHMIC = "logarithmic"
    CONTRA_HARMONIC = "contra-harmonic"
    QUADRATIC = "quadratic"
    FIRST_SEIFFERT = "first-seiffert"
    SECOND_SEIFFERT = "second-seiffert"
    NEUMAN_SANDOR = "neuman-sandor"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GeneralizedLog:
    """The p-th generalized logarithmic mean; p = -1 is L and p = 0 the identric mean."""

    p: float

    def __str__(self) -> str:
        return f"generalized-log({self.p!r})"


AnyKind = Union[MeanKind, GeneralizedLog]

# the strict chain G < L < P < A < M < T < Q < C
CHAIN = (
    MeanKind.GEOMETRIC,
    MeanKind.LOGARITHMIC,
    MeanKind.FIRST_SEIFFERT,
    MeanKind.ARITHMETIC,
    MeanKind.NEUMAN_SANDOR,
    MeanKind.SECOND_SEIFFERT,
    MeanKind.QUADRATIC,
    MeanKind.CONTRA_HARMONIC,
)
KY_FAN = CHAIN[:6]


@dataclass(frozen=True)
class PositivePair:
    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise InvalidPair(f"{name}={v!r} is not a real number") from None
            if not math.isfinite(v) or v <= 0.0:
                raise InvalidPair(f"{name}={v!r} must be finite and > 0")
            object.__setattr__(self, name, v)

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    @property
    def hi(self) -> float:
        return max(self.a, self.b)

    @property
    def lo(self) -> float:
        return min(self.a, self.b)

    def scaled(self, factor: float) -> "PositivePair":
        return PositivePair(self.a * factor, self.b * factor)


@dataclass(frozen=True)
class NormalizedArg:
    """Reduced form of a pair: ``x = (hi - lo) / (hi + lo)`` and ``scale = A``.

    ``xc = 2 lo / (hi + lo)`` is ``1 - x`` computed without cancellation; for
    widely separated pairs it carries the information that rounding ``x``
    to a float near 1 throws away.
    """

    x: float
    scale: float
    xc: float


def normalize(pair: PositivePair) -> NormalizedArg:
    hi, lo = pair.hi, pair.lo
    s = hi + lo
    return NormalizedArg(x=(hi - lo) / s, scale=0.5 * hi + 0.5 * lo, xc=2.0 * lo / s)


# ---------------------------------------------------------------------------
# arcsinh
# ---------------------------------------------------------------------------


def _asinh_kernel(x):
    ax = np.abs(x)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        sq = ax * ax
        core = np.log1p(ax + sq / (1.0 + np.sqrt(1.0 + sq)))
        large = np.log(ax) + _LN2
        small = ax * even_series(ax, _ASINH_SERIES)
    out = np.where(ax < _ASINH_SWITCH, small, np.where(ax > _ASINH_LARGE, large, core))
    return np.copysign(out, x)


def stable_arcsinh(x):
    """Inverse hyperbolic sine, odd by construction.

    Uses ``log1p(|x| + x**2 / (1 + sqrt(1 + x**2)))``, which is the textbook
    ``log(x + sqrt(1 + x**2))`` rearranged so that the argument of the
    logarithm never cancels, and an odd Taylor polynomial for ``|x| < 2**-6``.
    Accepts floats or arrays.
    """
    arr = np.asarray(x, dtype=np.float64)
    out = _asinh_kernel(arr)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# array kernels, hi >= lo
# ---------------------------------------------------------------------------


def _canonical(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.maximum(a, b), np.minimum(a, b)


def _arith(hi, lo):
    return 0.5 * hi + 0.5 * lo


def _direct(kind: MeanKind, hi, lo):
    d = hi - lo
    s = hi + lo
    if kind is MeanKind.ARITHMETIC:
        return _arith(hi, lo)
    if kind is MeanKind.GEOMETRIC:
        return np.sqrt(hi) * np.sqrt(lo)
    if kind is MeanKind.QUADRATIC:
        # the plain form is exact on small integers; hypot only guards the range ends
        plain = np.sqrt(0.5 * (hi * hi + lo * lo))
        safe = (hi < 1e150) & (lo > 1e-150)
        return np.where(safe, plain, np.hypot(hi, lo) * math.sqrt(0.5))
    if kind is MeanKind.CONTRA_HARMONIC:
        return (hi * hi + lo * lo) / s
    if kind is MeanKind.LOGARITHMIC:
        return d / np.log1p(d / lo)
    if kind is MeanKind.FIRST_SEIFFERT:
        return d / (2.0 * np.arctan2(d, 2.0 * np.sqrt(hi) * np.sqrt(lo)))
    if kind is MeanKind.SECOND_SEIFFERT:
        return d / (2.0 * np.arctan2(d, s))
    if kind is MeanKind.NEUMAN_SANDOR:
        return d / (2.0 * _asinh_kernel(d / s))
    raise TypeError(f"unknown mean kind {kind!r}")


_SERIES = {
    MeanKind.NEUMAN_SANDOR: _NS_SERIES,
    MeanKind.LOGARITHMIC: _LOG_SERIES,
    MeanKind.FIRST_SEIFFERT: _P_SERIES,
    MeanKind.SECOND_SEIFFERT: _T_SERIES,
}


def _near_diagonal(kind: MeanKind, hi, lo):
    x = (hi - lo) / (hi + lo)
    return _arith(hi, lo) * even_series(x, _SERIES[kind])


def _genlog(p: float, hi, lo):
    d = hi - lo
    u = d / hi
    if abs(p) < GENLOG_SNAP:
        # identric mean: hi * exp(-r log r / (1 - r) - 1), r = lo / hi
        r = lo / hi
        return hi * np.exp(r * (-np.log1p(-u)) / u - 1.0)
    if abs(p + 1.0) < GENLOG_SNAP:
        return _kernel(MeanKind.LOGARITHMIC, hi, lo)
    q = p + 1.0
    inner = -np.expm1(q * np.log1p(-u)) / (q * u)
    return hi * np.exp(np.log(inner) / p)


def _kernel(kind: AnyKind, hi, lo):
    with np.errstate(all="ignore"):
        if isinstance(kind, GeneralizedLog):
            out = _genlog(float(kind.p), hi, lo)
        elif kind in _SERIES:
            x = (hi - lo) / (hi + lo)
            out = np.where(x < SERIES_SWITCH, _near_diagonal(kind, hi, lo), _direct(kind, hi, lo))
        else:
            out = _direct(kind, hi, lo)
    return np.where(hi == lo, hi, out)


def evaluate(kind: AnyKind, a, b):
    """Vectorized mean of arrays ``a`` and ``b`` (no validation)."""
    hi, lo = _canonical(a, b)
    return _kernel(kind, hi, lo)


def mean(kind: AnyKind, pair: PositivePair) -> float:
    """The requested mean of ``pair``; equal to ``a`` when ``a == b``."""
    return float(evaluate(kind, pair.a, pair.b))


def from_normalized(kind: AnyKind, arg: NormalizedArg) -> float:
    """Rebuild a mean from the reduced pair ``(x, A)``."""
    x, s, xc = arg.x, arg.scale, arg.xc
    if x == 0.0:
        return s
    if isinstance(kind, GeneralizedLog):
        return float(evaluate(kind, s * (1.0 + x), s * xc))
    if kind in _SERIES and x < SERIES_SWITCH:
        return s * float(even_series(x, _SERIES[kind]))
    if kind is MeanKind.ARITHMETIC:
        return s
    if kind is MeanKind.GEOMETRIC:
        return s * math.sqrt(xc) * math.sqrt(1.0 + x)
    if kind is MeanKind.QUADRATIC:
        return s * math.hypot(1.0, x)
    if kind is MeanKind.CONTRA_HARMONIC:
        return s * (1.0 + x * x)
    if kind is MeanKind.LOGARITHMIC:
        return s * x / (0.5 * math.log1p(2.0 * x / xc))
    if kind is MeanKind.FIRST_SEIFFERT:
        return s * x / math.atan2(x, math.sqrt(xc) * math.sqrt(1.0 + x))
    if kind is MeanKind.SECOND_SEIFFERT:
        return s * x / math.atan(x)
    if kind is MeanKind.NEUMAN_SANDOR:
        return s * x / stable_arcsinh(x)
    raise TypeError(f"unknown mean kind {kind!r}")


# ---------------------------------------------------------------------------
# excesses: mean / A - 1 with small relative error
# ---------------------------------------------------------------------------


def _excess(kind: MeanKind, hi, lo):
    with np.errstate(all="ignore"):
        x = (hi - lo) / (hi + lo)
        x2 = x * x
        if kind is MeanKind.ARITHMETIC:
            out = np.zeros_like(x)
        elif kind is MeanKind.QUADRATIC:
            out = x2 / (1.0 + np.sqrt(1.0 + x2))
        elif kind is MeanKind.CONTRA_HARMONIC:
            out = x2
        elif kind is MeanKind.GEOMETRIC:
            small = -x2 / (1.0 + np.sqrt((1.0 - x) * (1.0 + x)))
            out = np.where(x < 0.5, small, _direct(kind, hi, lo) / _arith(hi, lo) - 1.0)
        else:
            series = even_series(x, _SERIES[kind], start=1)
            out = np.where(
                x < SERIES_SWITCH, series, _direct(kind, hi, lo) / _arith(hi, lo) - 1.0
            )
    return out


def excess(kind: MeanKind, a, b):
    """``mean / A - 1`` for arrays, accurate in relative terms near the diagonal."""
    hi, lo = _canonical(a, b)
    return _excess(kind, hi, lo)


# ---------------------------------------------------------------------------
# inequality checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one inequality check: margins are ``greater - lesser``."""

    check: str
    margins: dict
    holds: bool
    values: tuple = ()


def _require_distinct(pair: PositivePair) -> None:
    if pair.degenerate:
        raise DegeneratePair(f"a = b = {pair.a!r}: strict inequalities do not hold")


def chain_gaps(a, b):
    """Adjacent gaps of the chain G < L < P < A < M < T < Q < C, shape (..., 7).

    Gaps are ``A * (e_next - e_prev)`` with ``e`` the excesses, so they stay
    resolvable for pairs far closer than one ulp of A.
    """
    hi, lo = _canonical(a, b)
    ex = np.stack([_excess(k, hi, lo) for k in CHAIN], axis=-1)
    return _arith(hi, lo)[..., None] * np.diff(ex, axis=-1)


def chain_check(pair: PositivePair) -> CheckReport:
    _require_distinct(pair)
    gaps = chain_gaps(pair.a, pair.b)
    scale = 0.5 * pair.a + 0.5 * pair.b
    labels = [f"{lo}<{hi}" for lo, hi in zip(CHAIN, CHAIN[1:])]
    values = tuple((k, mean(k, pair)) for k in CHAIN)
    return CheckReport(
        check="chain",
        margins=dict(zip(labels, map(float, gaps))),
        holds=bool(np.all(gaps > -CHAIN_SLACK * scale)),
        values=values,
    )


def ky_fan_ratios(a, b):
    """Ratios ``mean(a, b) / mean(1 - a, 1 - b)`` for G, L, P, A, M, T, shape (..., 6)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.stack([evaluate(k, a, b) / evaluate(k, 1.0 - a, 1.0 - b) for k in KY_FAN], axis=-1)


def ky_fan_holds(ratios):
    """Strict increase across the last axis, allowing ``ULP_SLACK`` ulps."""
    slack = ULP_SLACK * np.spacing(ratios[..., 1:])
    return np.all(np.diff(ratios, axis=-1) > -slack, axis=-1)


def ky_fan_check(pair: PositivePair) -> CheckReport:
    for name, v in (("a", pair.a), ("b", pair.b)):
        if not 0.0 < v < 0.5:
            raise OutOfDomain(f"{name}={v!r} outside (0, 1/2)")
    _require_distinct(pair)
    ratios = ky_fan_ratios(pair.a, pair.b)
    labels = [f"{lo}<{hi}" for lo, hi in zip(KY_FAN, KY_FAN[1:])]
    return CheckReport(
        check="ky-fan",
        margins=dict(zip(labels, map(float, np.diff(ratios)))),
        holds=bool(ky_fan_holds(ratios)),
        values=tuple(zip(KY_FAN, map(float, ratios))),
    )


_SQUARES_SWITCH = 0.2
_SQ_LOWER = tuple(float(c) for c in _c.SQ_LOWER)
_SQ_UPPER = tuple(float(c) for c in _c.SQ_UPPER)
_PM_PRODUCT = tuple(float(c) for c in _c.PM_PRODUCT)


def squares_margins(a, b):
    """Margins of A T < M^2 < (A^2 + T^2) / 2 and P M < A^2, shape (..., 3).

    All three vanish to fourth order at the diagonal, so below x = 0.2 they
    come from their exact Taylor series in x; above, from the excesses.
    """
    hi, lo = _canonical(a, b)
    with np.errstate(all="ignore"):
        x = (hi - lo) / (hi + lo)
        m = _excess(MeanKind.NEUMAN_SANDOR, hi, lo)
        t = _excess(MeanKind.SECOND_SEIFFERT, hi, lo)
        p = _excess(MeanKind.FIRST_SEIFFERT, hi, lo)
        direct = np.stack(
            [
                2.0 * m + m * m - t,
                t + 0.5 * t * t - 2.0 * m - m * m,
                -(p + m + p * m),
            ],
            axis=-1,
        )
        series = np.stack(
            [even_series(x, tab, start=2) for tab in (_SQ_LOWER, _SQ_UPPER, _PM_PRODUCT)],
            axis=-1,
        )
    a2 = np.square(_arith(hi, lo))
    return a2[..., None] * np.where((x < _SQUARES_SWITCH)[..., None], series, direct)


def neuman_sandor_squares_check(pair: PositivePair) -> CheckReport:
    _require_distinct(pair)
    margins = squares_margins(pair.a, pair.b)
    labels = ("M^2-A*T", "(A^2+T^2)/2-M^2", "A^2-P*M")
    return CheckReport(
        check="neuman-sandor-squares",
        margins=dict(zip(labels, map(float, margins))),
        holds=bool(np.all(margins > 0.0)),
    )
