"""The nine acceptance criteria, each at its stated tolerance and time limit.

Every test appends one PASS/FAIL line to the terminal summary.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

import conftest
from nsmean import bounds, lemmas, means, verification
from nsmean.bounds import BoundFamily
from nsmean.lemmas import T_MAX, LemmaId, RatioId
from nsmean.means import GeneralizedLog, MeanKind, PositivePair

GRID_PAIRS = 1_000_000
KY_FAN_PAIRS = 100_000
SEED = 20240601


def _truncated(v, places=3):
    return math.floor(v * 10**places) / 10**places


@contextmanager
def criterion(number, title, time_limit=None, prior_seconds=0.0):
    # prior_seconds covers work done in a shared fixture before the block
    start = time.perf_counter() - prior_seconds
    detail = {}
    try:
        yield detail
        elapsed = time.perf_counter() - start
        if time_limit is not None:
            assert elapsed < time_limit, f"took {elapsed:.2f} s, limit {time_limit} s"
    except BaseException as exc:
        line = f"criterion {number}: FAIL  {title}  ({exc})"
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    extra = "  ".join(f"{k}={v}" for k, v in detail.items())
    line = f"criterion {number}: PASS  {title}  [{elapsed:.2f} s]  {extra}".rstrip()
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def grid():
    start = time.perf_counter()
    result = verification.run_grid(GRID_PAIRS, SEED)
    return result, time.perf_counter() - start


def test_criterion_1_constants():
    with criterion(1, "constants reproduce printed digits, residuals <= 1e-12", time_limit=1.0) as d:
        c = bounds.compute_constants()
        assert _truncated(c.alpha0) == 0.777
        assert _truncated(c.lambda0) == 0.274
        assert _truncated(c.p0) == 1.843
        assert c.beta == 0.8 and c.mu == 0.32
        worst = max(c.residuals.values())
        assert worst <= 1e-12
        d.update(alpha0=repr(c.alpha0), lambda0=repr(c.lambda0), p0=repr(c.p0), max_residual=f"{worst:.1e}")


def test_criterion_2_checkpoints():
    with criterion(2, "g_alpha0(2^(1/6)) = 0.569..., G_lambda0(2^(1/6)) = 12.313...", time_limit=1.0) as d:
        c = bounds.constants()
        g_end = lemmas.g_p(c.alpha0, T_MAX)
        G_end = lemmas.G_p(c.lambda0, T_MAX)
        assert _truncated(g_end) == 0.569
        assert _truncated(G_end) == 12.313
        d.update(g=f"{g_end:.6f}", G=f"{G_end:.6f}")


def test_criterion_3_lemma_signs():
    with criterion(3, "lemma signs on 10^4 Chebyshev points, switch residual <= 1e-12", time_limit=5.0) as d:
        c = bounds.constants()
        cases = [
            (LemmaId.L21, c.beta, 1),
            (LemmaId.L21, c.alpha0, -1),
            (LemmaId.L22, c.mu, 1),
            (LemmaId.L22, c.lambda0, -1),
        ]
        for lemma_id, p, sign in cases:
            rep = lemmas.verify_lemma(lemma_id, p, 10_000)
            assert rep.sign_verified and rep.sign == sign
            assert (rep.min_value > 0) if sign > 0 else (rep.max_value < 0)
            assert rep.monotone_verified
            if sign < 0:
                assert 1.0 < rep.switch_point < T_MAX
                assert rep.switch_residual <= 1e-12
                d[f"t_{lemma_id.value}"] = f"{rep.switch_point:.12f}"


def test_criterion_4_containment(grid):
    result, elapsed = grid
    with criterion(4, "10^6 pairs: both enclosures contain M, sharp inside simple", 60.0, elapsed) as d:
        v = result.violations
        for key in ("qa_containment", "qa_containment_exact", "ca_containment", "ca_containment_exact", "simple_bounds"):
            assert v[key] == 0, (key, v[key])
        worst = min(result.worst[k] for k in result.worst if k.endswith("_ulps"))
        assert worst > -4
        d.update(pairs=GRID_PAIRS, worst_float_margin_ulps=worst)


def test_criterion_5_sharpness():
    with criterion(5, "+/-1e-6 perturbed weights fail on a 10^4 x-grid", time_limit=10.0) as d:
        xs = lemmas.scan_grid(10_000)
        c = bounds.constants()
        for family in BoundFamily:
            lo_w, hi_w = c.weights(family)
            lower_fail, upper_fail = bounds.containment_violations(family, xs, lo_w, hi_w)
            assert lower_fail.size == 0 and upper_fail.size == 0
            raised, _ = bounds.containment_violations(family, xs, lo_w + 1e-6, hi_w)
            _, lowered = bounds.containment_violations(family, xs, lo_w, hi_w - 1e-6)
            assert raised.size > 0 and lowered.size > 0
            d[f"{family.value}_failures"] = f"{raised.size}/{lowered.size}"


def test_criterion_6_ratio_limits():
    with criterion(6, "extrapolated ratio limits within 1e-6", time_limit=5.0) as d:
        c = bounds.constants()
        for ratio_id, at_0, at_1 in ((RatioId.R1, 0.8, c.alpha0), (RatioId.R2, 0.32, c.lambda0)):
            prof = lemmas.sharpness_scan(ratio_id, 10_000)
            err = max(abs(prof.limit_at_0 - at_0), abs(prof.limit_at_1 - at_1))
            assert err <= 1e-6
            assert prof.bracketed
            d[f"{ratio_id.value}_error"] = f"{err:.1e}"


def test_criterion_7_derivative_identities():
    with criterion(7, "central differences match the factored derivatives to 1e-6") as d:
        ts = np.linspace(1.0, T_MAX, 52)[1:-1]
        h = 1e-6
        worst = 0.0
        for lemma_id, func, p in (
            (LemmaId.L21, lemmas.f_p, 0.8),
            (LemmaId.L21, lemmas.f_p, 0.5),
            (LemmaId.L22, lemmas.F_p, 0.32),
            (LemmaId.L22, lemmas.F_p, 0.5),
        ):
            for t in ts:
                fd = (func(p, t + h) - func(p, t - h)) / (2 * h)
                ident = lemmas.derivative_identity(lemma_id, p, t)
                rel = abs(fd - ident) / abs(ident)
                assert rel <= 1e-6, (lemma_id, p, t, rel)
                worst = max(worst, rel)
        d.update(points=len(ts), worst_relative=f"{worst:.1e}")


def test_criterion_8_chain_ky_fan_lp(grid):
    result, _ = grid
    with criterion(8, "10^6-pair chain, 10^5-pair Ky Fan, L_p0 < M < L_2") as d:
        assert result.violations["chain"] == 0
        assert result.violations["lp_bounds"] == 0
        assert result.violations["neuman_sandor_squares"] == 0
        ky_fan = verification.ky_fan_grid(KY_FAN_PAIRS, SEED)
        assert ky_fan == 0
        d.update(chain_min_gap_over_A=f"{result.worst['chain_min_gap_over_A']:.2e}", ky_fan_violations=ky_fan)


def test_criterion_9_stability():
    with criterion(9, "series/direct crossover <= 1e-12, means exact on the diagonal") as d:
        worst = 0.0
        kinds = (MeanKind.NEUMAN_SANDOR, MeanKind.LOGARITHMIC, MeanKind.FIRST_SEIFFERT, MeanKind.SECOND_SEIFFERT)
        for kind in kinds:
            for x in np.geomspace(0.5e-4, 2e-4, 101):
                hi, lo = np.float64(1.0 + x), np.float64(1.0 - x)
                series = float(means._near_diagonal(kind, hi, lo))
                direct = float(means._direct(kind, hi, lo))
                worst = max(worst, abs(series - direct) / direct)
        assert worst <= 1e-12
        every = list(MeanKind) + [GeneralizedLog(p) for p in (-2.0, -1.0, 0.0, 1.0, 2.0)]
        for a in (1e-300, 1e-3, 0.7, 1.0, 3.0, 1e3, 1e300):
            for kind in every:
                assert means.mean(kind, PositivePair(a, a)) == a
        d.update(worst_relative=f"{worst:.1e}")
