"""Command-line front end: ``nsmean {eval,enclose,verify,sharpness,lemmas,constants}``.

Every invocation writes one JSON record to stdout (or a CSV stream with
``--emit csv``); diagnostics go to stderr.  Exit codes: 0 pass, 1 verification
failure, 2 usage error.  Floats are printed with 17 significant digits so they
read back to the same binary64 value.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import bounds, lemmas, verification
from .bounds import BoundFamily
from .errors import InternalInconsistency, InvalidPair, SignViolation
from .means import CHAIN, GeneralizedLog, MeanKind, PositivePair, mean

SCHEMA_VERSION = "1.0"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
LIMIT_TOLERANCE = 1e-6

log = logging.getLogger("nsmean")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def leading_digits(v: float, places: int = 3) -> str:
    """``v`` truncated (not rounded) to ``places`` decimals, as in ``1.843...``."""
    text = format(v, f".{places + 6}f")
    return text[: text.index(".") + places + 1]


def _encode(v) -> str:
    if v is None or isinstance(v, (bool, np.bool_)):
        return json.dumps(None if v is None else bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v) if math.isfinite(v) else "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(x) for x in v) + "]"
    return json.dumps(str(v))


def record(command: str, inputs: dict, results: dict, passed: Optional[bool] = None) -> str:
    body = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs, "results": results}
    if passed is not None:
        body["pass"] = passed
    return _encode(body)


def write_csv(stream, columns: Sequence[str], rows: dict) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    data = [np.asarray(rows[c]) for c in columns]
    for i in range(len(data[0])):
        writer.writerow([format_float(col[i]) if math.isfinite(col[i]) else "nan" for col in data])


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------


def positive_real(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v) or v <= 0.0:
        raise argparse.ArgumentTypeError(f"must be finite and > 0: {text!r}")
    return v


def _at_least(minimum: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {v}")
        return v

    return parse


def mean_kinds(text: str) -> list:
    kinds = []
    for name in filter(None, (s.strip() for s in text.split(","))):
        if name.startswith("generalized-log:"):
            try:
                kinds.append(GeneralizedLog(float(name.split(":", 1)[1])))
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad exponent in {name!r}") from None
            continue
        try:
            kinds.append(MeanKind(name))
        except ValueError:
            choices = ", ".join(k.value for k in MeanKind)
            raise argparse.ArgumentTypeError(
                f"unknown mean {name!r} (choose from {choices}, generalized-log:P)"
            ) from None
    if not kinds:
        raise argparse.ArgumentTypeError("no mean kinds given")
    return kinds


def families(text: str) -> tuple:
    try:
        return tuple(BoundFamily(s.strip()) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"families must be drawn from qa, ca: {text!r}") from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_eval(args, out) -> int:
    pair = PositivePair(args.a, args.b)
    kinds = args.kinds or list(CHAIN)
    results = {str(k): mean(k, pair) for k in kinds}
    out.write(record("eval", {"a": args.a, "b": args.b, "kinds": [str(k) for k in kinds]}, results) + "\n")
    return EXIT_PASS


def cmd_enclose(args, out) -> int:
    pair = PositivePair(args.a, args.b)
    enc = bounds.enclose(args.family, pair)
    m = mean(MeanKind.NEUMAN_SANDOR, pair)
    below, above = bounds.containment_margins(args.family, pair.a, pair.b)
    if pair.degenerate:
        contained = enc.lower == m == enc.upper
    else:
        contained = enc.contains(m, ulps=4) and float(below) > 0.0 and float(above) > 0.0
    results = {
        "lower": enc.lower,
        "upper": enc.upper,
        "width": enc.width,
        "M": m,
        "lower_margin": float(below),
        "upper_margin": float(above),
        "contains": contained,
    }
    inputs = {"a": args.a, "b": args.b, "family": args.family.value}
    out.write(record("enclose", inputs, results, passed=contained) + "\n")
    return EXIT_PASS if contained else EXIT_FAIL


def cmd_verify(args, out) -> int:
    res = verification.run_grid(args.grid, args.seed, args.families)
    inputs = {"grid": args.grid, "seed": args.seed, "families": [f.value for f in args.families]}
    results = {"violations": res.violations, "worst": res.worst, "prng": "PCG64"}
    text = record("verify", inputs, results, passed=res.passed)
    if args.emit == "csv":
        write_csv(out, verification.CSV_COLUMNS, res.rows)
    else:
        out.write(text + "\n")
    if args.csv_out:
        with open(args.csv_out, "w", newline="") as fh:
            write_csv(fh, verification.CSV_COLUMNS, res.rows)
    for name, count in res.violations.items():
        if count:
            log.warning("%s: %d violation(s)", name, count)
    return EXIT_PASS if res.passed else EXIT_FAIL


def cmd_sharpness(args, out) -> int:
    profile = lemmas.sharpness_scan(args.ratio, args.samples)
    c = bounds.constants()
    expected_0, expected_1 = (
        (c.beta, c.alpha0) if args.ratio is lemmas.RatioId.R1 else (c.mu, c.lambda0)
    )
    err_0 = abs(profile.limit_at_0 - expected_0)
    err_1 = abs(profile.limit_at_1 - expected_1)
    passed = profile.bracketed and err_0 <= LIMIT_TOLERANCE and err_1 <= LIMIT_TOLERANCE
    results = {
        "limit_at_0": profile.limit_at_0,
        "closed_form_at_0": expected_0,
        "error_at_0": err_0,
        "limit_at_1": profile.limit_at_1,
        "closed_form_at_1": expected_1,
        "error_at_1": err_1,
        "inf_observed": profile.inf_observed,
        "sup_observed": profile.sup_observed,
        "bracketed": profile.bracketed,
        "sample_count": len(profile.xs),
    }
    rows = {"x": profile.xs, "ratio": profile.values}
    if args.emit == "csv":
        write_csv(out, ("x", "ratio"), rows)
    else:
        inputs = {"ratio": args.ratio.value, "samples": args.samples}
        out.write(record("sharpness", inputs, results, passed=passed) + "\n")
    if args.csv_out:
        with open(args.csv_out, "w", newline="") as fh:
            write_csv(fh, ("x", "ratio"), rows)
    return EXIT_PASS if passed else EXIT_FAIL


def _report_dict(rep: lemmas.LemmaReport) -> dict:
    return {
        "lemma": rep.lemma_id.value,
        "p": rep.p,
        "sample_count": rep.sample_count,
        "sign": rep.sign,
        "min_value": rep.min_value,
        "max_value": rep.max_value,
        "sign_verified": rep.sign_verified,
        "monotone_verified": rep.monotone_verified,
        "switch_point": rep.switch_point,
        "switch_residual": rep.switch_residual,
        "endpoint_values": list(rep.endpoint_values),
    }


def cmd_lemmas(args, out) -> int:
    c = bounds.constants()
    cases = [
        ("f_upper", lemmas.LemmaId.L21, c.beta),
        ("f_lower", lemmas.LemmaId.L21, c.alpha0),
        ("F_upper", lemmas.LemmaId.L22, c.mu),
        ("F_lower", lemmas.LemmaId.L22, c.lambda0),
    ]
    reports, passed = {}, True
    for name, lemma_id, p in cases:
        try:
            rep = lemmas.verify_lemma(lemma_id, p, args.samples)
        except SignViolation as exc:
            log.error("%s", exc)
            reports[name] = {"lemma": lemma_id.value, "p": p, "sign_verified": False, "witness": exc.witness}
            passed = False
            continue
        reports[name] = _report_dict(rep)
        passed = passed and rep.sign_verified and rep.monotone_verified
    g_end = lemmas.g_p(c.alpha0, lemmas.T_MAX)
    G_end = lemmas.G_p(c.lambda0, lemmas.T_MAX)
    checkpoints = {
        "g_alpha0_at_t_max": g_end,
        "g_alpha0_expected_leading": "0.569",
        "g_alpha0_matches": leading_digits(g_end) == "0.569",
        "G_lambda0_at_t_max": G_end,
        "G_lambda0_expected_leading": "12.313",
        "G_lambda0_matches": leading_digits(G_end) == "12.313",
    }
    passed = passed and checkpoints["g_alpha0_matches"] and checkpoints["G_lambda0_matches"]
    results = {"reports": reports, "checkpoints": checkpoints}
    out.write(record("lemmas", {"samples": args.samples}, results, passed=passed) + "\n")
    return EXIT_PASS if passed else EXIT_FAIL


EXPECTED_LEADING = {"alpha0": "0.777", "lambda0": "0.274", "p0": "1.843"}


def cmd_constants(args, out) -> int:
    try:
        c = bounds.compute_constants()
    except InternalInconsistency as exc:
        log.error("%s", exc)
        out.write(record("constants", {}, {"error": str(exc)}, passed=False) + "\n")
        return EXIT_FAIL
    values = {"alpha0": c.alpha0, "beta": c.beta, "lambda0": c.lambda0, "mu": c.mu, "p0": c.p0}
    matches = {k: leading_digits(values[k]) == v for k, v in EXPECTED_LEADING.items()}
    passed = all(matches.values()) and all(r <= bounds.RESIDUAL_LIMIT for r in c.residuals.values())
    results = dict(values)
    results.update(
        {
            "residuals": c.residuals,
            "expected_leading_digits": EXPECTED_LEADING,
            "matches_leading_digits": matches,
            "provenance": c.provenance,
        }
    )
    out.write(record("constants", {}, results, passed=passed) + "\n")
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsmean", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate means of a pair")
    p.add_argument("--a", type=positive_real, required=True)
    p.add_argument("--b", type=positive_real, required=True)
    p.add_argument("--kinds", type=mean_kinds, default=None, help="comma-separated; default all eight")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("enclose", help="sharp enclosure of the Neuman-Sandor mean")
    p.add_argument("--a", type=positive_real, required=True)
    p.add_argument("--b", type=positive_real, required=True)
    p.add_argument("--family", type=BoundFamily, choices=list(BoundFamily), default=BoundFamily.QA,
                   metavar="{qa,ca}")
    p.set_defaults(func=cmd_enclose)

    p = sub.add_parser("verify", help="check every inequality on a seeded random grid")
    p.add_argument("--grid", type=_at_least(1), default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--families", type=families, default=tuple(BoundFamily))
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.add_argument("--csv-out", metavar="PATH", help="also write per-pair margins to PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sharpness", help="endpoint limits of a ratio function")
    p.add_argument("--ratio", type=lemmas.RatioId, choices=list(lemmas.RatioId), default=lemmas.RatioId.R1,
                   metavar="{r1,r2}")
    p.add_argument("--samples", type=_at_least(1000), default=10_000)
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.add_argument("--csv-out", metavar="PATH", help="also write the profile to PATH")
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("lemmas", help="sign checks of the auxiliary functions")
    p.add_argument("--samples", type=_at_least(100), default=10_000)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("constants", help="sharp constants with cross-check residuals")
    p.set_defaults(func=cmd_constants)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    level = logging.DEBUG if os.environ.get("NSMEAN_VERBOSE") else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="nsmean: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_PASS
    out = out if out is not None else sys.stdout
    try:
        return args.func(args, out)
    except InvalidPair as exc:
        log.error("%s", exc)
        return EXIT_USAGE


def run(argv: Sequence[str]) -> tuple:
    """Run the CLI in-process and return ``(exit_code, stdout_text)``."""
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
