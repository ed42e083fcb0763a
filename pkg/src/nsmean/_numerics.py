"""Small numerical helpers shared by the mean, bound and lemma modules."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import InternalInconsistency


def even_series(x, coeffs: Sequence[float], start: int = 0):
    """Evaluate ``sum_k coeffs[k] * x**(2k)`` for ``k >= start`` by Horner in x**2.

    ``start`` drops the leading coefficients, which is how the callers get the
    tail of a series without subtracting the constant term.
    """
    x2 = np.square(x)
    acc = np.zeros_like(x2) + coeffs[-1]
    for c in reversed(coeffs[start:-1]):
        acc = acc * x2 + c
    if start:
        acc = acc * x2**start
    return acc


def bisect(func: Callable[[float], float], lo: float, hi: float) -> float:
    """Root of ``func`` in ``[lo, hi]`` by plain bisection to adjacent floats.

    The loop runs until no binary64 number lies strictly between the bracket
    ends, so the final bracket is one ulp wide.  Of the two ends, the one with
    the smaller residual is returned.
    """
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise InternalInconsistency(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}"
        )
    while True:
        mid = lo + 0.5 * (hi - lo)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo if abs(f_lo) <= abs(f_hi) else hi


def chebyshev_interior(lo: float, hi: float, n: int) -> np.ndarray:
    """The ``n`` Chebyshev points of the first kind mapped into ``(lo, hi)``, ascending."""
    k = np.arange(n, 0, -1)
    nodes = np.cos((2 * k - 1) * np.pi / (2 * n))
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes


def richardson(values: Sequence[float], ratio: float, orders: Sequence[float]) -> float:
    """Extrapolate ``values[i] = f(h / ratio**i)`` to ``h -> 0``.

    ``orders`` gives the exponents of the error terms removed at each level,
    e.g. ``(2, 4)`` for an even expansion sampled at halving steps with ratio 2.
    Three values and two orders make the usual 3-point scheme.
    """
    level = [float(v) for v in values]
    if len(orders) < len(level) - 1:
        raise ValueError("need one error order per elimination level")
    for order in orders[: len(level) - 1]:
        mult = ratio**order
        level = [(mult * fine - coarse) / (mult - 1.0) for coarse, fine in zip(level, level[1:])]
    return level[0]


def ulps_between(x: float, y: float) -> float:
    """Distance ``x - y`` measured in ulps of ``y``."""
    return (x - y) / math.ulp(y)
