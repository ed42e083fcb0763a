"""Sign and monotonicity verification for the auxiliary functions behind the bounds.

With ``x = sqrt(t^6 - 1)`` the variable t runs over ``[1, 2^(1/6)]`` as x runs
over ``[0, 1]``.  ``f_p`` (QA family) and ``F_p`` (CA family) have the sign of
``blend(p) - M``; their derivatives are ``3 (t-1)^2 g_p(t)`` and
``3 (t-1)^2 G_p(t)`` over positive factors, so the polynomials g_p and G_p
decide where they rise and fall.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import _blend
from ._blend import BoundFamily
from ._numerics import bisect, chebyshev_interior, richardson
from .errors import ParamOutOfRange, SignViolation
from .means import _asinh_kernel

T_MAX = 2.0 ** (1.0 / 6.0)
LOG_1P_SQRT2 = math.log1p(math.sqrt(2.0))


class LemmaId(enum.Enum):
    L21 = "L21"  # f_p, QA family
    L22 = "L22"  # F_p, CA family

    @property
    def family(self) -> BoundFamily:
        return BoundFamily.QA if self is LemmaId.L21 else BoundFamily.CA


class RatioId(enum.Enum):
    R1 = "r1"
    R2 = "r2"

    @property
    def family(self) -> BoundFamily:
        return BoundFamily.QA if self is RatioId.R1 else BoundFamily.CA


def _check_p(p) -> float:
    if not 0.0 < p < 1.0:
        raise ParamOutOfRange(f"p={p!r} outside (0, 1)")
    return p


def _check_t(t):
    arr = np.asarray(t, dtype=np.float64)
    if not np.all((arr >= 1.0) & (arr <= T_MAX)):
        raise ParamOutOfRange(f"t outside [1, 2^(1/6)]: {t!r}")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _x_of_t(t):
    # t^6 - 1 without cancellation near t = 1
    return np.sqrt(np.expm1(6.0 * np.log1p(t - 1.0)))


# ---------------------------------------------------------------------------
# f_p and F_p
# ---------------------------------------------------------------------------


def _denominator(family: BoundFamily, p, t):
    if family is BoundFamily.QA:
        return p * t**3 + 3.0 * (1.0 - p) * t + 2.0 * p
    return p * t**6 + 6.0 * (1.0 - p) * t + 5.0 * p


def _lemma_function(family: BoundFamily, p, t):
    weight = 3.0 if family is BoundFamily.QA else 6.0
    x = _x_of_t(t)
    ash = _asinh_kernel(x)
    den = _denominator(family, p, t)
    with np.errstate(all="ignore"):
        closed = ash - weight * x / den
        # identical by algebra; keeps relative accuracy where closed cancels
        factored = weight * ash * _blend.weight_margin(family, p, x) / den
    return np.where(x < _blend.SERIES_SWITCH, factored, closed)


def f_p(p: float, t):
    """``arcsinh(sqrt(t^6-1)) - 3 sqrt(t^6-1) / (p t^3 + 3(1-p) t + 2p)``.

    Near t = 1 both terms agree to many digits, so there the value is taken
    from the equivalent product ``3 arcsinh(x) (blend - M) / (A * denominator)``
    whose factors are evaluated by series.
    """
    _check_p(p)
    return _out(_lemma_function(BoundFamily.QA, p, _check_t(t)))


def F_p(p: float, t):
    """``arcsinh(sqrt(t^6-1)) - 6 sqrt(t^6-1) / (p t^6 + 6(1-p) t + 5p)``; see :func:`f_p`."""
    _check_p(p)
    return _out(_lemma_function(BoundFamily.CA, p, _check_t(t)))


# ---------------------------------------------------------------------------
# derivative-numerator polynomials
# ---------------------------------------------------------------------------


def g_coefficients(p):
    """Coefficients of g_p, lowest degree first.  Works for floats or Fractions."""
    return [
        -3 * (1 - p),
        -6 * (1 - p),
        4 * p * p + 6 * p - 9,
        2 * (-2 * p * p + 9 * p - 6),
        3 * (-p * p + 4 * p - 2),
        2 * p * p,
        p * p,
    ]


def G_coefficients(p):
    """Coefficients of G_p, lowest degree first."""
    return [
        -12 * (1 - p),
        -24 * (1 - p),
        25 * p * p + 36 * p - 36,
        2 * (-5 * p * p + 54 * p - 24),
        3 * (-3 * p * p + 36 * p - 8),
        2 * p * (33 - 4 * p),
        p * (48 - 7 * p),
        6 * p * (5 - p),
        p * (12 + 5 * p),
        2 * p * (3 + 2 * p),
        3 * p * p,
        2 * p * p,
        p * p,
    ]


def _horner(coeffs, t):
    acc = np.zeros_like(t) + coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * t + c
    return acc


def _derivative(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


def poly_scale(coeffs, t):
    """``sum |c_k| t^k``: the size of the terms a Horner evaluation rounds."""
    return _horner([abs(float(c)) for c in coeffs], np.abs(np.asarray(t, dtype=np.float64)))


def g_p(p: float, t):
    """Numerator polynomial of f_p' (degree 6)."""
    _check_p(p)
    return _out(_horner(g_coefficients(p), _check_t(t)))


def G_p(p: float, t):
    """Numerator polynomial of F_p' (degree 12)."""
    _check_p(p)
    return _out(_horner(G_coefficients(p), _check_t(t)))


def g_p_prime(p: float, t):
    _check_p(p)
    return _out(_horner(_derivative(g_coefficients(p)), _check_t(t)))


def G_p_prime(p: float, t):
    _check_p(p)
    return _out(_horner(_derivative(G_coefficients(p)), _check_t(t)))


def g_four_fifths_factored(t):
    t = np.asarray(t, dtype=np.float64)
    return _out((t - 1.0) / 25.0 * _horner([15, 45, 86, 90, 48, 16], t))


def G_eight_25ths_factored(t):
    t = np.asarray(t, dtype=np.float64)
    inner = [1275, 3825, 7250, 9510, 8004, 4832, 2544, 1140, 460, 96, 48, 16]
    return _out(4.0 * (t - 1.0) / 625.0 * _horner(inner, t))


def derivative_identity(lemma_id: LemmaId, p: float, t):
    """The closed form of f_p' (or F_p') through the polynomial g_p (or G_p)."""
    _check_p(p)
    t = _check_t(t)
    family = lemma_id.family
    poly = g_coefficients(p) if family is BoundFamily.QA else G_coefficients(p)
    with np.errstate(all="ignore"):
        num = 3.0 * (t - 1.0) ** 2 * _horner(poly, t)
        out = num / (_denominator(family, p, t) ** 2 * _x_of_t(t))
    return _out(out)


# ---------------------------------------------------------------------------
# lemma verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaReport:
    lemma_id: LemmaId
    p: float
    sample_count: int
    min_value: float
    max_value: float
    sign_verified: bool
    switch_point: Optional[float]
    endpoint_values: tuple
    sign: int = 0
    monotone_verified: bool = False
    switch_residual: Optional[float] = None


def _expected_sign(coeffs_exact) -> int:
    # sign of the derivative numerator at t = 1 decides whether the function
    # leaves 0 upward or downward; a zero there means the next order decides
    at_one = sum(coeffs_exact)
    if at_one != 0:
        return 1 if at_one > 0 else -1
    slope = sum(_derivative(coeffs_exact))
    return 1 if slope >= 0 else -1


def _sign_at_one(coeffs_exact) -> int:
    at_one = sum(coeffs_exact)
    return (at_one > 0) - (at_one < 0)


def verify_lemma(lemma_id: LemmaId, p: float, n: int) -> LemmaReport:
    """Sample the lemma function at ``n`` Chebyshev points of (1, 2^(1/6)).

    Raises :class:`SignViolation` if any sample has the wrong sign.  When the
    derivative numerator changes sign the crossing is located by bisection
    and the samples are checked to fall then rise around it.
    """
    if n < 100:
        raise ParamOutOfRange(f"n={n!r}: at least 100 samples are required")
    _check_p(p)
    lemma_id = LemmaId(lemma_id)
    family = lemma_id.family
    builder = g_coefficients if family is BoundFamily.QA else G_coefficients
    coeffs = builder(p)
    exact = builder(Fraction(p))
    expected = _expected_sign(exact)

    ts = chebyshev_interior(1.0, T_MAX, n)
    values = _lemma_function(family, p, ts)
    wrong = np.flatnonzero(values * expected <= 0.0)
    if wrong.size:
        t_bad = float(ts[wrong[0]])
        raise SignViolation(
            f"{lemma_id.value} with p={p!r}: value {values[wrong[0]]!r} at t={t_bad!r} "
            f"has the wrong sign (expected {'+' if expected > 0 else '-'})",
            witness=t_bad,
        )

    poly_values = _horner(coeffs, ts)
    g_end = float(_horner(coeffs, np.float64(T_MAX)))
    switch = residual = None
    if _sign_at_one(exact) < 0 < g_end:
        switch = bisect(lambda s: float(_horner(coeffs, np.float64(s))), 1.0, T_MAX)
        residual = abs(float(_horner(coeffs, np.float64(switch))))
        before, after = ts < switch, ts > switch
        monotone = bool(np.all(poly_values[before] < 0.0) and np.all(poly_values[after] > 0.0))
        # the sampled minimum should sit next to the switch point
        k = int(np.argmin(values))
        lo = ts[k - 1] if k > 0 else 1.0
        hi = ts[k + 1] if k + 1 < n else T_MAX
        monotone = monotone and bool(lo <= switch <= hi)
    else:
        monotone = bool(np.all(poly_values * expected > 0.0))

    ends = _lemma_function(family, p, np.array([1.0, T_MAX]))
    return LemmaReport(
        lemma_id=lemma_id,
        p=p,
        sample_count=n,
        min_value=float(values.min()),
        max_value=float(values.max()),
        sign_verified=True,
        switch_point=switch,
        endpoint_values=(float(ends[0]), float(ends[1])),
        sign=expected,
        monotone_verified=monotone,
        switch_residual=residual,
    )


# ---------------------------------------------------------------------------
# ratio functions and their endpoint limits
# ---------------------------------------------------------------------------


def _check_x(x):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all((arr > 0.0) & (arr <= 1.0)):
        raise ParamOutOfRange(f"x outside (0, 1]: {x!r}")
    return arr


def ratio_R1(x):
    """``(M - Q^(1/3) A^(2/3)) / (Q/3 + 2A/3 - Q^(1/3) A^(2/3))`` at ``x = (a-b)/(a+b)``."""
    return _out(_blend.ratio(BoundFamily.QA, _check_x(x)))


def ratio_R2(x):
    """``(M - C^(1/6) A^(5/6)) / (C/6 + 5A/6 - C^(1/6) A^(5/6))`` at ``x = (a-b)/(a+b)``."""
    return _out(_blend.ratio(BoundFamily.CA, _check_x(x)))


RATIO_FUNCTIONS: dict = {RatioId.R1: ratio_R1, RatioId.R2: ratio_R2}

# dyadic subsequences feeding the extrapolation; R is even in x at 0 and
# analytic in h = 1 - x at 1
_LEFT_LEVELS = (8, 9, 10)
_LEFT_ORDERS = (2, 4)
_RIGHT_LEVELS = (14, 15, 16)
_RIGHT_ORDERS = (1, 2)


@dataclass(frozen=True)
class RatioProfile:
    ratio_id: RatioId
    xs: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    limit_at_0: float
    limit_at_1: float
    inf_observed: float
    sup_observed: float

    @property
    def samples(self):
        return list(zip(self.xs.tolist(), self.values.tolist()))

    @property
    def bracketed(self) -> bool:
        return self.limit_at_1 < self.inf_observed and self.sup_observed < self.limit_at_0


def endpoint_limits(ratio_id: RatioId) -> tuple:
    """Richardson-extrapolated ``(lim x->0, lim x->1)`` of the ratio."""
    func = RATIO_FUNCTIONS[RatioId(ratio_id)]
    left = [func(2.0**-k) for k in _LEFT_LEVELS]
    right = [func(1.0 - 2.0**-k) for k in _RIGHT_LEVELS]
    return richardson(left, 2.0, _LEFT_ORDERS), richardson(right, 2.0, _RIGHT_ORDERS)


def scan_grid(n: int) -> np.ndarray:
    """Sorted grid in (0, 1) refined geometrically toward both ends.

    The closest approach grows with ``n``: ``n^-1.5`` at 0 and ``n^-2`` at 1.
    """
    half = n // 2
    k_left = 1.5 * math.log2(n)
    k_right = 2.0 * math.log2(n)
    left = 2.0 ** -np.linspace(1.0, k_left, half)
    right = 1.0 - 2.0 ** -np.linspace(1.0, k_right, n - half)
    dyadic = [2.0**-k for k in _LEFT_LEVELS] + [1.0 - 2.0**-k for k in _RIGHT_LEVELS]
    return np.unique(np.concatenate([left, right, dyadic]))


def sharpness_scan(ratio_id: RatioId, n: int) -> RatioProfile:
    if n < 1000:
        raise ParamOutOfRange(f"n={n!r}: at least 1000 samples are required")
    ratio_id = RatioId(ratio_id)
    xs = scan_grid(n)
    values = _blend.ratio(ratio_id.family, xs)
    at_0, at_1 = endpoint_limits(ratio_id)
    return RatioProfile(
        ratio_id=ratio_id,
        xs=xs,
        values=values,
        limit_at_0=at_0,
        limit_at_1=at_1,
        inf_observed=float(values.min()),
        sup_observed=float(values.max()),
    )


# ---------------------------------------------------------------------------
# generalized logarithmic exponent
# ---------------------------------------------------------------------------


def p0_equation(p: float) -> float:
    """``(p + 1)^(1/p) - 2 log(1 + sqrt 2)``, decreasing on [1, 3]."""
    return (p + 1.0) ** (1.0 / p) - 2.0 * LOG_1P_SQRT2


def solve_p0() -> float:
    """Unique root of :func:`p0_equation` in [1, 3] by bisection."""
    return bisect(p0_equation, 1.0, 3.0)


def lemma_root(lemma_id: LemmaId) -> Callable[[float], float]:
    """``p -> f_p(2^(1/6))`` (or ``F_p``): its root is the lower sharp constant."""
    family = LemmaId(lemma_id).family
    end = np.float64(T_MAX)
    return lambda p: float(_lemma_function(family, p, end))
