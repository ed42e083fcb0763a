"""Sharp two-sided blend bounds for the Neuman-Sandor mean.

For a family (QA or CA) the blend with weight p is::

    QA:  p (Q/3 + 2A/3) + (1 - p) Q^(1/3) A^(2/3)
    CA:  p (C/6 + 5A/6) + (1 - p) C^(1/6) A^(5/6)

and ``blend(alpha0) < M < blend(4/5)``, ``blend(lambda0) < M < blend(8/25)``
for every a != b, with all four weights best possible.
"""

from __future__ import annotations

import math
import threading
from decimal import Decimal, localcontext
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _blend
from ._blend import BoundFamily
from ._numerics import bisect
from .errors import InternalInconsistency, ParamOutOfRange
from .lemmas import LemmaId, lemma_root, p0_equation, ratio_R1, ratio_R2, solve_p0
from .means import (
    ULP_SLACK,
    CheckReport,
    GeneralizedLog,
    MeanKind,
    PositivePair,
    _canonical,
    _require_distinct,
    evaluate,
    mean,
)

__all__ = [
    "BoundFamily",
    "Enclosure",
    "SharpConstants",
    "blend",
    "blend_values",
    "compute_constants",
    "constants",
    "enclose",
    "enclosure_values",
    "lp_bounds_check",
    "simple_bounds_check",
]

RESIDUAL_LIMIT = 1e-12
BETA = 4.0 / 5.0
MU = 8.0 / 25.0


@dataclass(frozen=True)
class SharpConstants:
    alpha0: float
    beta: float
    lambda0: float
    mu: float
    p0: float
    residuals: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def weights(self, family: BoundFamily) -> tuple:
        if family is BoundFamily.QA:
            return self.alpha0, self.beta
        return self.lambda0, self.mu


# The closed forms cancel about two digits in their numerators, so they are
# evaluated in 40-digit decimal arithmetic and rounded once to binary64.
_DIGITS = 40


def _decimal_inputs():
    two = Decimal(2)
    root2 = two.sqrt()
    return two ** (Decimal(1) / Decimal(6)), (1 + root2).ln(), root2


def _alpha0_closed() -> float:
    with localcontext() as ctx:
        ctx.prec = _DIGITS
        s, ln, root2 = _decimal_inputs()
        return float((3 - 3 * s * ln) / ((2 + root2 - 3 * s) * ln))


def _lambda0_closed() -> float:
    with localcontext() as ctx:
        ctx.prec = _DIGITS
        s, ln, _ = _decimal_inputs()
        return float((6 - 6 * s * ln) / ((7 - 6 * s) * ln))


def compute_constants() -> SharpConstants:
    """Evaluate the sharp weights and cross-check each one by a second route.

    alpha0 and lambda0 come from their closed forms (the x -> 1 limits of the
    ratio functions) and are re-derived as roots in p of the lemma functions
    at ``t = 2^(1/6)``; p0 is the bisection root of ``(p+1)^(1/p) = 2 log(1+sqrt 2)``.
    """
    alpha0 = _alpha0_closed()
    lambda0 = _lambda0_closed()
    alpha0_root = bisect(lemma_root(LemmaId.L21), 0.5, 0.95)
    lambda0_root = bisect(lemma_root(LemmaId.L22), 0.05, 0.5)
    p0 = solve_p0()
    residuals = {
        "alpha0": abs(alpha0 - alpha0_root),
        "alpha0_ratio": abs(alpha0 - ratio_R1(1.0)),
        "lambda0": abs(lambda0 - lambda0_root),
        "lambda0_ratio": abs(lambda0 - ratio_R2(1.0)),
        "p0": abs(p0_equation(p0)),
    }
    bad = {k: v for k, v in residuals.items() if not v <= RESIDUAL_LIMIT}
    if bad:
        raise InternalInconsistency(f"cross-check residuals above {RESIDUAL_LIMIT}: {bad}")
    provenance = {
        "alpha0": "closed form; checked against the root of f_p(2^(1/6)) = 0 and R1(1)",
        "beta": "exact 4/5",
        "lambda0": "closed form (6 - 6 s L) / ((7 - 6 s) L); checked against the root of F_p(2^(1/6)) = 0 and R2(1)",
        "mu": "exact 8/25",
        "p0": "bisection on (p+1)^(1/p) - 2 log(1+sqrt 2) over [1, 3]",
    }
    return SharpConstants(
        alpha0=alpha0,
        beta=BETA,
        lambda0=lambda0,
        mu=MU,
        p0=p0,
        residuals=residuals,
        provenance=provenance,
    )


_lock = threading.Lock()
_cached: Optional[SharpConstants] = None


def constants() -> SharpConstants:
    """Process-wide constants, computed once on first use."""
    global _cached
    if _cached is None:
        with _lock:
            if _cached is None:
                _cached = compute_constants()
    return _cached


# ---------------------------------------------------------------------------
# blends and enclosures
# ---------------------------------------------------------------------------


def _reduce(a, b):
    hi, lo = _canonical(a, b)
    return (hi - lo) / (hi + lo), 0.5 * hi + 0.5 * lo


def blend_values(p: float, family: BoundFamily, a, b):
    """Vectorized blend; computed as ``A (1 + g + p (c - g))`` so it is monotone in p."""
    with np.errstate(all="ignore"):
        x, scale = _reduce(a, b)
        return scale * (1.0 + (_blend.geo_excess(x) + p * _blend.gap(family, x)))


def blend(p: float, family: BoundFamily, pair: PositivePair) -> float:
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"blend weight p={p!r} outside [0, 1]")
    return float(blend_values(p, BoundFamily(family), pair.a, pair.b))


@dataclass(frozen=True)
class Enclosure:
    lower: float
    upper: float
    family: BoundFamily

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, ulps: int = 0) -> bool:
        slack = ulps * math.ulp(value)
        return self.lower - slack < value < self.upper + slack


def enclosure_values(family: BoundFamily, a, b, weights: Optional[tuple] = None):
    """Lower and upper sharp bounds for arrays of pairs."""
    lo_w, hi_w = weights if weights is not None else constants().weights(family)
    return blend_values(lo_w, family, a, b), blend_values(hi_w, family, a, b)


def enclose(family: BoundFamily, pair: PositivePair) -> Enclosure:
    family = BoundFamily(family)
    lower, upper = enclosure_values(family, pair.a, pair.b)
    return Enclosure(lower=float(lower), upper=float(upper), family=family)


def containment_margins(family: BoundFamily, a, b, weights: Optional[tuple] = None):
    """``(M - lower, upper - M)`` from the factored form, resolvable at any x.

    These are the exact-arithmetic gaps; the rounded bounds themselves may
    tie with M when the gaps fall below one ulp.
    """
    lo_w, hi_w = weights if weights is not None else constants().weights(family)
    x, scale = _reduce(a, b)
    below = -scale * _blend.weight_margin(family, lo_w, x)
    above = scale * _blend.weight_margin(family, hi_w, x)
    return below, above


def containment_violations(family: BoundFamily, xs, lower_weight: float, upper_weight: float):
    """Points of ``xs`` where ``blend(lower) < M < blend(upper)`` fails, as two arrays."""
    xs = np.asarray(xs, dtype=np.float64)
    lower_fail = _blend.weight_margin(family, lower_weight, xs) >= 0.0
    upper_fail = _blend.weight_margin(family, upper_weight, xs) <= 0.0
    return xs[lower_fail], xs[upper_fail]


# ---------------------------------------------------------------------------
# checks against the classical bounds
# ---------------------------------------------------------------------------


def _slack(pair: PositivePair) -> float:
    return ULP_SLACK * math.ulp(0.5 * pair.a + 0.5 * pair.b)


def simple_margins(a, b):
    """Margins of the four weight-0/1 bounds and of the sharp bounds inside them.

    Columns: M - QA geometric, QA convex - M, M - CA geometric, CA convex - M,
    sharp QA lower - QA geometric, QA convex - sharp QA upper, and the same two
    for CA.  Shape (..., 8).
    """
    c = constants()
    x, scale = _reduce(a, b)
    cols = []
    for family in BoundFamily:
        cols.append(-scale * _blend.weight_margin(family, 0.0, x))
        cols.append(scale * _blend.weight_margin(family, 1.0, x))
    for family in BoundFamily:
        lo_w, hi_w = c.weights(family)
        d = scale * _blend.gap(family, x)
        cols.append(lo_w * d)
        cols.append((1.0 - hi_w) * d)
    return np.stack(cols, axis=-1)


SIMPLE_LABELS = (
    "M-Q^(1/3)A^(2/3)",
    "Q/3+2A/3-M",
    "M-C^(1/6)A^(5/6)",
    "C/6+5A/6-M",
    "qa_sharp_lower-simple_lower",
    "simple_upper-qa_sharp_upper",
    "ca_sharp_lower-simple_lower",
    "simple_upper-ca_sharp_upper",
)


def simple_bounds_check(pair: PositivePair) -> CheckReport:
    _require_distinct(pair)
    margins = simple_margins(pair.a, pair.b)
    return CheckReport(
        check="simple-bounds",
        margins=dict(zip(SIMPLE_LABELS, map(float, margins))),
        holds=bool(np.all(margins > -_slack(pair))),
    )


def lp_margins(a, b, p0: float):
    """``(M - L_p0, L_2 - M)`` for arrays."""
    m = evaluate(MeanKind.NEUMAN_SANDOR, a, b)
    return m - evaluate(GeneralizedLog(p0), a, b), evaluate(GeneralizedLog(2.0), a, b) - m


def lp_bounds_check(pair: PositivePair, p0: Optional[float] = None) -> CheckReport:
    _require_distinct(pair)
    if p0 is None:
        p0 = constants().p0
    below, above = lp_margins(pair.a, pair.b, p0)
    m = mean(MeanKind.NEUMAN_SANDOR, pair)
    return CheckReport(
        check="lp-bounds",
        margins={"M-L_p0": float(below), "L_2-M": float(above)},
        holds=bool(below > -_slack(pair) and above > -_slack(pair)),
        values=(("L_p0", m - float(below)), ("M", m), ("L_2", m + float(above))),
    )
