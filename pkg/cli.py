#!/usr/bin/env python3
"""Command-line front end: classify, invariants, realize, verify."""

from __future__ import annotations

import argparse
import json
import logging
from typing import Any, Sequence

from coframe_engine import cartan_data, invariants_payload, line_coframe, sphericity
from cr_config import OUTPUT_FORMATS, CRSettings, load_settings, validate_settings, with_overrides
from cr_errors import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    CRGeometryError,
    InvalidRequest,
    error_payload_for,
)
from cr_formats import dump_report, load_algebra_file, write_points_csv
from cr_line import ComplexLine
from cr_logging import configure_logging
from group_atlas import TAGS, builtin_algebra, canonical_line, classify
from realization import adjoint_orbit_sample, fit_e2_quadric
from verification import battery_summary, run_battery

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("classify", "invariants", "realize", "verify")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InvalidRequest(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--group", choices=TAGS, help="Built-in group tag.")
    source.add_argument("--algebra-file", help="JSON algebra file with structure constants.")
    line = common.add_mutually_exclusive_group()
    line.add_argument("--t", type=float, help="Parameter of the canonical family.")
    line.add_argument(
        "--line",
        nargs=6,
        type=float,
        metavar="X",
        help="Line literal: re_a im_a re_b im_b re_c im_c.",
    )
    common.add_argument("--samples", type=int, help="Sample count (default from CRGEOM_SAMPLES).")
    common.add_argument("--seed", type=int, help="Random seed (default from CRGEOM_SEED).")
    common.add_argument("--format", choices=sorted(OUTPUT_FORMATS), help="Report format.")
    common.add_argument("--tol", type=float, help="Override the residual tolerance (expert use).")

    parser = _Parser(
        prog="crgeom",
        description="Left-invariant CR structures on three-dimensional Lie groups.",
    )
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True
    commands.add_parser("classify", parents=[common], help="Regularity, type and canonical parameter.")
    commands.add_parser("invariants", parents=[common], help="Structure triple and Cartan data.")
    realize = commands.add_parser("realize", parents=[common], help="Sample the adjoint orbit of [L].")
    realize.add_argument("--points", action="store_true", help="Include orbit points in the report.")
    realize.add_argument("--csv", metavar="PATH", help="Also write orbit points as CSV.")
    commands.add_parser("verify", parents=[common], help="Run the verification battery.")
    return parser


# ------------------------
# Request resolution
# ------------------------


def _resolve_algebra(args: argparse.Namespace, settings: CRSettings):
    if args.algebra_file:
        return None, load_algebra_file(args.algebra_file, tolerances=settings.tolerances)
    if args.group:
        return args.group, builtin_algebra(args.group)
    raise InvalidRequest("One of --group or --algebra-file is required.")


def _resolve_line(args: argparse.Namespace, tag: str | None) -> ComplexLine:
    if args.line is not None:
        return ComplexLine.from_literal(args.line)
    if tag is None:
        raise InvalidRequest("A custom algebra needs --line.")
    if tag in ("sl2r", "su2") and args.t is None:
        raise InvalidRequest(f"--t or --line is required for {tag}.")
    return canonical_line(tag, args.t if args.t is not None else 0.0)


def _settings_for(args: argparse.Namespace) -> CRSettings:
    settings = with_overrides(
        load_settings(),
        tol=args.tol,
        seed=args.seed,
        samples=args.samples,
        output_format=args.format,
    )
    if settings.default_samples < 1:
        raise InvalidRequest("--samples must be at least 1.")
    if args.tol is not None and args.tol <= 0:
        raise InvalidRequest("--tol must be positive.")
    return settings


# ------------------------
# Commands
# ------------------------


def run_classify(args: argparse.Namespace, settings: CRSettings) -> tuple[int, dict[str, Any]]:
    tag, alg = _resolve_algebra(args, settings)
    report = classify(tag, alg, _resolve_line(args, tag), tolerances=settings.tolerances)
    payload = report.to_payload()
    payload["tolerances"] = settings.tolerances.as_dict()
    return EXIT_OK, payload


def run_invariants(args: argparse.Namespace, settings: CRSettings) -> tuple[int, dict[str, Any]]:
    tag, alg = _resolve_algebra(args, settings)
    data = line_coframe(alg, _resolve_line(args, tag), tolerances=settings.tolerances)
    cartan = cartan_data(data.triple, realization=data, tolerances=settings.tolerances)
    verdict = sphericity(data.triple, tolerances=settings.tolerances)
    payload = invariants_payload(data, cartan, verdict, settings.tolerances)
    payload["group"] = tag
    return EXIT_OK, payload


def run_realize(args: argparse.Namespace, settings: CRSettings) -> tuple[int, dict[str, Any]]:
    tag, alg = _resolve_algebra(args, settings)
    sample = adjoint_orbit_sample(
        alg,
        _resolve_line(args, tag),
        seed=settings.default_seed,
        samples=settings.default_samples,
        tag=tag,
        tolerances=settings.tolerances,
    )
    payload = sample.to_payload(include_points=args.points or settings.include_points)
    payload["seed"] = settings.default_seed
    payload["tolerances"] = settings.tolerances.as_dict()
    if tag == "e2":
        payload["quadric_fit"] = fit_e2_quadric(sample)
    if args.csv:
        payload["csv_rows"] = write_points_csv(args.csv, sample.points)
        logger.info("Wrote %d orbit points to %s", payload["csv_rows"], args.csv)
    return EXIT_OK, payload


def run_verify(args: argparse.Namespace, settings: CRSettings) -> tuple[int, dict[str, Any]]:
    summary = battery_summary(run_battery(settings))
    summary["seed"] = settings.default_seed
    summary["tolerances"] = settings.tolerances.as_dict()
    status = EXIT_OK if summary["failed"] == 0 else EXIT_VERIFICATION_FAILED
    return status, summary


COMMANDS = {
    "classify": run_classify,
    "invariants": run_invariants,
    "realize": run_realize,
    "verify": run_verify,
}


# ------------------------
# Output
# ------------------------


def render_text(command: str, payload: dict[str, Any]) -> str:
    if command == "verify":
        rows = [f"{'check':<34} {'result':<6} {'value':>12} {'tolerance':>12}"]
        for check in payload["checks"]:
            rows.append(
                f"{check['name']:<34} {'pass' if check['passed'] else 'FAIL':<6} "
                f"{check['value']:>12.3e} {check['tolerance']:>12.3e}"
                + (f"  {check['detail']}" if check["detail"] else "")
            )
        rows.append(f"{payload['passed']}/{payload['total']} checks passed")
        return "\n".join(rows)
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        settings = _settings_for(args)
        configure_logging(settings)
        validate_settings(settings)
        status, payload = COMMANDS[args.command](args, settings)
    except CRGeometryError as exc:
        print(json.dumps(error_payload_for(exc), sort_keys=True))
        return exc.exit_code or EXIT_INVALID

    if settings.output_format == "text":
        print(render_text(args.command, payload))
    else:
        print(dump_report(payload))
    return status


if __name__ == "__main__":
    raise SystemExit(main())
