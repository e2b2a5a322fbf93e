"""Command line front end.

Every command prints one JSON document (or a tab-separated table) on
stdout. Exit status: 0 when the inequality/predicate holds, 1 when it
fails (the report carries a witness), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .applications import (
    GEQ,
    LEQ,
    PowerSeriesSpec,
    builtin_coefficients,
    monte_carlo_joint,
    series_monotonicity,
    win_probability_bounds,
)
from .chebyshev import (
    anticorrelated_upper_bound,
    covariance_gap,
    covariance_identity,
    product_inequality,
    sequence_lemma,
)
from .errors import InputError, NotCorrelatedError
from .family import EVERYWHERE, MODES, is_anticorrelated, is_correlated
from .io import distribution_from_json, load_family, loads, number, numbers, read_text
from .measure import EXACT, FLOAT, format_scalar, to_scalar
from .quotient import build_quotient

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chebcorr", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tier", choices=(EXACT, FLOAT), default=EXACT)
    common.add_argument("--tolerance", type=float, help="relative gap tolerance (float tier only)")
    common.add_argument("--output", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-correlated", parents=[common], help="test a family for (anti)correlation")
    p.add_argument("input", help="family JSON or CSV ('-' for stdin)")
    p.add_argument("--mode", choices=MODES, default=EVERYWHERE)
    p.add_argument("--anti", action="store_true", help="test anticorrelation of a pair instead")

    p = sub.add_parser("quotient", parents=[common], help="equivalence classes, induced order and measure")
    p.add_argument("input")
    p.add_argument("--strip-null", action="store_true", help="drop zero-weight points first")

    p = sub.add_parser("verify-pair", parents=[common], help="covariance inequality for two functions")
    p.add_argument("input")
    p.add_argument("--anticorrelated", action="store_true", help="check the reverse inequality")

    p = sub.add_parser("verify-product", parents=[common], help="k-function product inequality")
    p.add_argument("input")
    p.add_argument("--require-nonneg", type=_bool, default=True, metavar="BOOL")

    p = sub.add_parser("verify-sequence", parents=[common], help="product inequality for monotone sequences")
    p.add_argument("input", help='JSON {"sequences": {...}, "weights": [...], "tail_mass"?, "value_bound"?}')
    p.add_argument("--truncate", type=int, metavar="N")

    p = sub.add_parser("power-series", parents=[common], help="monotonicity of (rho - z) f(z) / z")
    p.add_argument("input", nargs="?", help='coefficient JSON {"coeffs": [...]} (a_1 first)')
    p.add_argument("--generator", help="builtin coefficients: ones, unit, geometric:<r>")
    p.add_argument("--rho", required=True)
    p.add_argument("--grid", required=True, help="comma-separated z values in [0, rho)")
    p.add_argument("--truncate", type=int, default=64, metavar="N")
    p.add_argument("--tail-sup", help="bound on rho^n a_n beyond the prefix (increasing coefficients)")

    p = sub.add_parser("prob-bound", parents=[common], help="win-probability lower bound for independent variables")
    p.add_argument("input", help='JSON {"x0": {"support": [...], "probs": [...]}, "competitors": [...]}')
    p.add_argument("--direction", choices=(GEQ, LEQ, "both"), default="both")
    p.add_argument("--seed", type=int, help="also run a seeded Monte Carlo cross-check")
    p.add_argument("--samples", type=int, default=1_000_000)
    return parser


def _check_config(args) -> None:
    if args.tolerance is not None:
        if args.tier != FLOAT:
            raise InputError("--tolerance only applies to the float tier", field="tolerance")
        if not args.tolerance >= 0:
            raise InputError("must be nonnegative", field="tolerance")


def _cmd_check_correlated(args) -> tuple[dict, int]:
    fam = load_family(args.input, args.tier)
    result = is_anticorrelated(fam, args.mode) if args.anti else is_correlated(fam, args.mode)
    report = {
        "predicate": "anticorrelated" if args.anti else "correlated",
        "mode": args.mode,
        "result": result.correlated,
        "witness": result.witness.to_json() if result.witness else None,
    }
    return report, EXIT_OK if result.correlated else EXIT_FAIL


def _cmd_quotient(args) -> tuple[dict, int]:
    fam = load_family(args.input, args.tier)
    if args.strip_null:
        fam = fam.strip_null()
    try:
        qs = build_quotient(fam)
    except NotCorrelatedError as exc:
        return {"correlated": False, "witness": exc.witness.to_json()}, EXIT_FAIL
    return {"correlated": True, **qs.to_json()}, EXIT_OK


def _cmd_verify_pair(args) -> tuple[dict, int]:
    fam = load_family(args.input, args.tier)
    if args.anticorrelated:
        report = anticorrelated_upper_bound(fam, args.tolerance)
    else:
        report = covariance_gap(fam, args.tolerance)
    direct, double = covariance_identity(fam)
    out = report.to_json()
    out["identity"] = {"gap_direct": format_scalar(direct), "gap_double_sum": format_scalar(double)}
    return out, EXIT_OK if report.ok else EXIT_FAIL


def _cmd_verify_product(args) -> tuple[dict, int]:
    fam = load_family(args.input, args.tier)
    report = product_inequality(fam, require_nonneg=args.require_nonneg, rel_tol=args.tolerance)
    return report.to_json(), EXIT_OK if report.ok else EXIT_FAIL


def _cmd_verify_sequence(args) -> tuple[dict, int]:
    doc = loads(read_text(args.input))
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object", field="input")
    tier = args.tier
    seqs = doc.get("sequences")
    if not isinstance(seqs, dict) or not seqs:
        raise InputError("expected an object of named sequences", field="sequences")
    values = [numbers(v, tier, f"sequences.{k}") for k, v in seqs.items()]
    weights = numbers(doc.get("weights"), tier, "weights")
    opt = {key: number(doc[key], tier, key) for key in ("tail_mass", "value_bound") if doc.get(key) is not None}
    report = sequence_lemma(
        values,
        weights,
        truncate=args.truncate,
        infinite=bool(doc.get("infinite", False)),
        tier=tier,
        names=list(seqs),
        rel_tol=args.tolerance,
        **opt,
    )
    return report.to_json(), EXIT_OK if report.ok else EXIT_FAIL


def _cmd_power_series(args) -> tuple[dict, int]:
    tier = args.tier
    if (args.input is None) == (args.generator is None):
        raise InputError("give exactly one of a coefficient file or --generator", field="coeffs")
    if args.generator is not None:
        coeffs = builtin_coefficients(args.generator)
    else:
        doc = loads(read_text(args.input))
        if not isinstance(doc, dict) or "coeffs" not in doc:
            raise InputError("missing", field="coeffs")
        coeffs = numbers(doc["coeffs"], tier, "coeffs")
    grid = [cell.strip() for cell in args.grid.split(",") if cell.strip()]
    spec = PowerSeriesSpec(
        coeffs,
        to_scalar(args.rho, tier, "rho"),
        truncation=args.truncate,
        tail_sup=args.tail_sup,
        tier=tier,
    )
    report = series_monotonicity(spec, grid)
    return report.to_json(), EXIT_OK if report.corrected_matches else EXIT_FAIL


def _cmd_prob_bound(args) -> tuple[dict, int]:
    doc = loads(read_text(args.input))
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object", field="input")
    tier = args.tier
    x0 = distribution_from_json(doc.get("x0"), tier, "x0")
    raw = doc.get("competitors")
    if not isinstance(raw, list):
        raise InputError("expected a list of distributions", field="competitors")
    competitors = [distribution_from_json(c, tier, f"competitors[{i}]") for i, c in enumerate(raw)]
    directions = (GEQ, LEQ) if args.direction == "both" else (args.direction,)
    out, ok = {}, True
    for direction in directions:
        report = win_probability_bounds(x0, competitors, direction)
        section = report.to_json()
        if args.seed is not None:
            mc = monte_carlo_joint(x0.sampler(), [c.sampler() for c in competitors], args.samples,
                                   seed=args.seed, direction=direction)
            section["monte_carlo"] = {**mc.to_json(), "covers_exact": mc.covers(report.joint)}
        out[direction] = section
        ok = ok and report.holds
    return out, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "check-correlated": _cmd_check_correlated,
    "quotient": _cmd_quotient,
    "verify-pair": _cmd_verify_pair,
    "verify-product": _cmd_verify_product,
    "verify-sequence": _cmd_verify_sequence,
    "power-series": _cmd_power_series,
    "prob-bound": _cmd_prob_bound,
}


def _flatten(doc, prefix: str = ""):
    if isinstance(doc, dict):
        for key, value in doc.items():
            yield from _flatten(value, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(doc, list) and any(isinstance(v, (dict, list)) for v in doc):
        for i, value in enumerate(doc):
            yield from _flatten(value, f"{prefix}[{i}]")
    else:
        yield prefix, doc


def render(doc: dict, output: str) -> str:
    if output == "table":
        lines = []
        for key, value in _flatten(doc):
            text = json.dumps(value) if isinstance(value, (list, bool)) or value is None else str(value)
            lines.append(f"{key}\t{text}")
        return "\n".join(lines) + "\n"
    return json.dumps(doc, indent=2) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    output = getattr(args, "output", "json")
    try:
        _check_config(args)
        report, code = COMMANDS[args.command](args)
    except InputError as exc:
        report = {"error": str(exc), "field": exc.field, "index": exc.index}
        stdout.write(render(report, output))
        return EXIT_INPUT
    stdout.write(render({"command": args.command, **report}, output))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
