"""Command-line client over the sweep layer.

Thin by design: flags are parsed into the same pydantic requests the web
service accepts, results come back through the same functions, and this module
only formats them. Exit codes: 0 success, 1 failed validation, 2 bad request
or unsupported engine/layout combination.
"""

from __future__ import annotations

import argparse
import json
import sys

import pydantic

from . import sweep
from .errors import NonPositiveDistance, ScaleExceeded
from .schemas import CurveRequest


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("range must look like LO:HI (radians)") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zzqec",
        description="Failure probabilities of distance-3 codes under nearest-neighbor "
                    "ZZ crosstalk. Angles are in radians; delta_t is the dimensionless "
                    "product of coupling strength and free-evolution time.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="sweep one failure-probability curve to CSV")
    curve.add_argument("--code", required=True, choices=["steane7", "laflamme5"])
    curve.add_argument("--depth", type=int, default=1)
    curve.add_argument("--engine", default="closed",
                       choices=["brute", "factorized", "closed", "perturbative", "recursive"])
    curve.add_argument("--alpha-sq", type=float, default=0.5,
                       help="|alpha|^2 of the encoded superposition (default 0.5)")
    curve.add_argument("--range", type=_parse_range, default=(0.0, 1.5707963267948966),
                       metavar="LO:HI", help="delta_t range in radians (default 0:pi/2)")
    curve.add_argument("--samples", type=int, default=100)
    curve.add_argument("--out", default="-", help="output CSV path, '-' for stdout")

    validate = sub.add_parser("validate", help="run cross-engine and coefficient checks")
    validate.add_argument("--grid", type=int, default=50, help="delta_t samples per check")
    validate.add_argument("--tolerance", type=float, default=None,
                          help="override the absolute tolerance of the agreement checks")
    validate.add_argument("--json-out", default=None, help="also write the JSON report here")

    sub.add_parser("threshold", help="print the concatenation thresholds")

    est = sub.add_parser("estimate-delta", help="dipole-dipole coupling estimate")
    est.add_argument("--distance", type=float, required=True, help="qubit spacing in meters")

    return parser


def _cmd_curve(args: argparse.Namespace) -> int:
    try:
        req = CurveRequest(code=args.code, depth=args.depth, engine=args.engine,
                           alpha_sq=args.alpha_sq, lo=args.range[0], hi=args.range[1],
                           samples=args.samples)
    except pydantic.ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        text = sweep.curve_csv(sweep.run_curve(req))
    except ScaleExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    report = sweep.run_validation(args.grid, args.tolerance)
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        print(f"{status}  {check.name}: max deviation {check.max_deviation:.3e} "
              f"(tolerance {check.tolerance:.0e})")
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report.model_dump(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if report.passed:
        print(f"all {len(report.checks)} checks passed")
        return 0
    print(f"FAILED; worst offender: {report.worst}", file=sys.stderr)
    return 1


def _cmd_threshold() -> int:
    resp = sweep.threshold_response()
    print(f"{'code':<12}{'C(n,2)':>8}{'depth-1 coeff':>15}{'threshold on (delta_t)^2':>28}")
    for row in resp.codes:
        frac = f"1/{row.threshold_denominator}"
        print(f"{row.code:<12}{row.pair_choices:>8}{row.depth1_coefficient:>15}"
              f"{frac:>16} = {row.threshold:.1e}")
    return 0


def _cmd_estimate_delta(args: argparse.Namespace) -> int:
    try:
        resp = sweep.delta_estimate_response(args.distance)
    except NonPositiveDistance as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"dipole-dipole coupling at d = {resp.distance_m:.3e} m: "
          f"delta = {resp.delta_per_s:.3e} 1/s")
    print(f"with gate time {resp.tau_gate_s:.1e} s: delta_t per gate = "
          f"{resp.delta_t_per_gate:.3e}, (delta_t)^2 = {resp.delta_t_sq_per_gate:.3e}")
    for row in sweep.threshold_response().codes:
        print(f"  {row.code} threshold {row.threshold:.1e} on (delta_t)^2")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "curve":
        return _cmd_curve(args)
    if args.command == "validate":
        return _cmd_validate(args)
    if args.command == "threshold":
        return _cmd_threshold()
    if args.command == "estimate-delta":
        return _cmd_estimate_delta(args)
    raise AssertionError(f"unhandled command {args.command!r}")  # pragma: no cover


def entrypoint() -> None:  # pragma: no cover - console-script shim
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entrypoint()
