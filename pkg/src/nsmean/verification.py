"""Seeded random-grid verification of every inequality the package implements.

Pairs are drawn log-uniformly from [1e-3, 1e3] with numpy's PCG64 bit
generator (``numpy.random.Generator(numpy.random.PCG64(seed))``), so a seed
fixes the grid on every platform.  Ky Fan pairs are drawn uniformly from
(0, 1/2) by the same generator, after the main grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .bounds import BoundFamily
from .means import (
    CHAIN_SLACK,
    ULP_SLACK,
    MeanKind,
    chain_gaps,
    evaluate,
    ky_fan_holds,
    ky_fan_ratios,
    squares_margins,
)

LOG10_RANGE = (-3.0, 3.0)
KY_FAN_FRACTION = 10  # one Ky Fan pair per ten grid pairs

CSV_COLUMNS = (
    "a",
    "b",
    "x",
    "M",
    "chain_min_gap",
    "qa_lower_margin",
    "qa_upper_margin",
    "ca_lower_margin",
    "ca_upper_margin",
    "lp_lower_margin",
    "lp_upper_margin",
)


def random_pairs(n: int, rng: np.random.Generator):
    lo, hi = LOG10_RANGE
    a = 10.0 ** rng.uniform(lo, hi, n)
    b = 10.0 ** rng.uniform(lo, hi, n)
    keep = a != b
    return a[keep], b[keep]


def ky_fan_pairs(n: int, rng: np.random.Generator):
    a = 0.5 * rng.random(n)
    b = 0.5 * rng.random(n)
    keep = (a > 0.0) & (b > 0.0) & (a != b)
    return a[keep], b[keep]


@dataclass
class GridResult:
    n: int
    seed: int
    families: tuple
    violations: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)
    rows: dict = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())


def _ulp_slack(v):
    return ULP_SLACK * np.spacing(np.abs(v))


def run_grid(n: int, seed: int, families=tuple(BoundFamily)) -> GridResult:
    """Check every inequality on ``n`` seeded pairs and count the violations.

    Float comparisons allow ``ULP_SLACK`` ulps; margins computed from the
    factored forms are compared against zero with the same slack in units of A.
    """
    families = tuple(BoundFamily(f) for f in families)
    rng = np.random.Generator(np.random.PCG64(seed))
    a, b = random_pairs(n, rng)
    scale = 0.5 * a + 0.5 * b
    slack = _ulp_slack(scale)
    m = evaluate(MeanKind.NEUMAN_SANDOR, a, b)
    consts = bounds.constants()
    result = GridResult(n=n, seed=seed, families=families)
    v, worst = result.violations, result.worst

    gaps = chain_gaps(a, b)
    v["chain"] = int(np.count_nonzero(np.any(gaps <= -CHAIN_SLACK * scale[:, None], axis=1)))
    worst["chain_min_gap_over_A"] = float(np.min(gaps / scale[:, None]))
    rows = {"a": a, "b": b, "x": (np.maximum(a, b) - np.minimum(a, b)) / (a + b), "M": m}
    rows["chain_min_gap"] = gaps.min(axis=1)

    for family in families:
        key = family.value
        lower, upper = bounds.enclosure_values(family, a, b)
        float_fail = (m <= lower - _ulp_slack(m)) | (m >= upper + _ulp_slack(m))
        v[f"{key}_containment"] = int(np.count_nonzero(float_fail))
        below, above = bounds.containment_margins(family, a, b)
        v[f"{key}_containment_exact"] = int(np.count_nonzero((below <= -slack) | (above <= -slack)))
        worst[f"{key}_min_lower_margin_ulps"] = float(np.min((m - lower) / np.spacing(m)))
        worst[f"{key}_min_upper_margin_ulps"] = float(np.min((upper - m) / np.spacing(m)))
        rows[f"{key}_lower_margin"] = below
        rows[f"{key}_upper_margin"] = above
    for family in BoundFamily:
        if family not in families:
            rows[f"{family.value}_lower_margin"] = np.full_like(a, np.nan)
            rows[f"{family.value}_upper_margin"] = np.full_like(a, np.nan)

    simple = bounds.simple_margins(a, b)
    v["simple_bounds"] = int(np.count_nonzero(np.any(simple <= -slack[:, None], axis=1)))

    lp_below, lp_above = bounds.lp_margins(a, b, consts.p0)
    v["lp_bounds"] = int(np.count_nonzero((lp_below <= -slack) | (lp_above <= -slack)))
    rows["lp_lower_margin"] = lp_below
    rows["lp_upper_margin"] = lp_above

    squares = squares_margins(a, b)
    v["neuman_sandor_squares"] = int(np.count_nonzero(np.any(squares <= 0.0, axis=1)))

    ka, kb = ky_fan_pairs(max(1, n // KY_FAN_FRACTION), rng)
    v["ky_fan"] = int(np.count_nonzero(~ky_fan_holds(ky_fan_ratios(ka, kb))))

    result.rows = rows
    return result


def ky_fan_grid(n: int, seed: int) -> int:
    """Violations of the Ky Fan ordering on ``n`` seeded pairs from (0, 1/2)^2."""
    rng = np.random.Generator(np.random.PCG64(seed))
    ka, kb = ky_fan_pairs(n, rng)
    return int(np.count_nonzero(~ky_fan_holds(ky_fan_ratios(ka, kb))))
