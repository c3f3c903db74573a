"""Command-line front end.

Every command writes one artifact (JSON by default, or CSV) to stdout or
``--output``. Domain errors exit nonzero with a single ``error: CODE: message``
line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from typing import Any, Sequence

from . import __version__
from .contour import ContourGrid, emit_contour, scan_and_trace
from .errors import InternalInconsistencyError, MeridianError, PreconditionError
from .families import (
    DEFAULT_TABLE_START,
    IsoscelesSpec,
    critical_angle,
    enumerate_re_for_arc,
    scalene_family_table,
    solve_isosceles,
    solve_scalene,
)
from .geometry import Configuration, arc_angles
from .potential import PotentialModel, Variant
from .translation import relative_equilibrium
from .verify import appendix_regression, verify_configuration

SCHEMA_VERSION = 1
COMMANDS = (
    "critical-angle",
    "solve-scalene",
    "solve-isosceles",
    "enumerate",
    "trace-contour",
    "family-table",
    "verify",
    "regression",
)
IO_ERROR_STATUS = 5

_NUMBER_OR_FLAG = {"type": ["number", "integer", "boolean", "string", "null"]}

#: JSON Schema (draft 2020-12) of every JSON document the CLI writes.
JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "input", "records"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": list(COMMANDS)},
        "input": {"type": "object"},
        "metadata": {"type": "object"},
        "records": {
            "type": "array",
            "items": {"type": "object", "additionalProperties": _NUMBER_OR_FLAG},
        },
        "excluded": {
            "type": "array",
            "items": {"type": "object", "required": ["a", "x"]},
        },
        "coords": {"enum": ["xa", "ya"]},
        "polylines": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["branch", "points"],
                "properties": {
                    "branch": {"type": "string"},
                    "points": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                    },
                },
            },
        },
        "skipped_cells": {"type": "integer", "minimum": 0},
        "rejected_crossings": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def emit(records: Sequence[dict], fmt: str, extra: dict | None = None, header: Sequence[str] | None = None) -> bytes:
    """Serialize homogeneous ``records``.

    CSV: header row, ``'.'`` decimals, 17 significant digits, LF endings.
    JSON: an object with ``schema_version`` and ``records`` plus ``extra``.
    """
    if fmt == "csv":
        columns = list(header) if header is not None else (list(records[0]) if records else [])
        for rec in records:
            if list(rec) != columns:
                raise PreconditionError("records are not homogeneous")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if columns:
            writer.writerow(columns)
        for rec in records:
            writer.writerow([_csv_cell(rec[c]) for c in columns])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION}
        payload.update(extra or {})
        payload["records"] = list(records)
        return (json.dumps(payload, indent=2, allow_nan=False) + "\n").encode("utf-8")
    raise PreconditionError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _model(args) -> PotentialModel:
    variant = Variant(args.model)
    if variant is Variant.CHARGED:
        if not args.charge or len(args.charge) != 3:
            raise PreconditionError("--model charged needs exactly three --charge values")
        return PotentialModel.charged(args.charge)
    if args.charge:
        raise PreconditionError("--charge is only valid with --model charged")
    return PotentialModel(variant)


def _angle(args, value: float | None, name: str) -> float:
    if value is None:
        raise PreconditionError(f"--{name} is required")
    if not math.isfinite(value):
        raise PreconditionError(f"--{name} must be finite")
    return math.radians(value) if args.degrees else value


def _checked(cfg: Configuration, model: PotentialModel) -> Configuration:
    report = verify_configuration(cfg, model)
    if not report.passed:
        raise InternalInconsistencyError(f"configuration failed verification (max residual {report.max_abs:.3e})")
    return cfg


def _config_fields(cfg: Configuration) -> dict:
    return {
        "omega_sq": cfg.omega_sq,
        "s": cfg.s,
        "theta1": cfg.theta1,
        "theta2": cfg.theta2,
        "theta3": cfg.theta3,
        "theta3_undetermined": cfg.theta3_undetermined,
    }


def _cmd_critical_angle(args, model):
    return [asdict(critical_angle())], {}


def _cmd_solve_scalene(args, model):
    if args.cos_a is not None:
        if args.a is not None:
            raise PreconditionError("give either --a or --cos-a, not both")
        if not -1.0 < args.cos_a < 1.0:
            raise PreconditionError("--cos-a must lie in (-1, 1)")
        a = math.acos(args.cos_a)
    else:
        a = _angle(args, args.a, "a")
    pair = solve_scalene(a)
    records = []
    for label, shape in zip(("y+", "y-"), pair.shapes):
        cfg = _checked(relative_equilibrium(shape, model), model)
        records.append(
            {
                "branch": label,
                "a": shape.a,
                "x": shape.x,
                "y": shape.y,
                **_config_fields(cfg),
                "largest_arc": max(arc_angles(shape)),
                "isosceles_limit": pair.isosceles_limit,
            }
        )
    return records, {}


def _cmd_solve_isosceles(args, model):
    spec = IsoscelesSpec(_angle(args, args.theta, "theta"))
    if model.variant is Variant.ATTRACTIVE and model.masses == (1.0, 1.0, 1.0):
        cfg = solve_isosceles(spec)
    else:
        solve_isosceles(spec)  # same singularity screening for every model
        cfg = relative_equilibrium(spec.shape, model)
    _checked(cfg, model)
    return [{"theta": spec.theta, **_config_fields(cfg)}], {}


def _cmd_enumerate(args, model):
    result = enumerate_re_for_arc(_angle(args, args.a, "a"), model)
    records = []
    for eq in result:
        cfg = _checked(eq.configuration, model)
        records.append(
            {"kind": eq.kind.value, "a": eq.shape.a, "x": eq.shape.x, **_config_fields(cfg), "largest_arc": eq.largest_arc}
        )
    excluded = [{"a": s.a, "x": s.x} for s in result.excluded]
    return records, {"excluded": excluded}


def _cmd_family_table(args, model):
    if model.variant is not Variant.ATTRACTIVE:
        raise PreconditionError("family-table is defined for the attractive model only")
    rows = scalene_family_table(args.n, args.cos_a_start)
    for row in rows:
        _checked(Configuration(row.theta1, row.theta2, row.theta3, row.omega_sq, row.s), model)
    return [asdict(r) for r in rows], {}


def _cmd_verify(args, model):
    thetas = [_angle(args, getattr(args, f"theta{k}"), f"theta{k}") for k in (1, 2, 3)]
    if args.omega_sq is None:
        raise PreconditionError("--omega-sq is required")
    cfg = Configuration(*thetas, args.omega_sq, args.s)
    report = verify_configuration(cfg, model, args.tol)
    r1, r2, r3 = report.residuals
    record = {
        "r1": r1,
        "r2": r2,
        "r3": r3,
        "constraint": report.constraint,
        "max_abs": report.max_abs,
        "tol": report.tol,
        "passed": report.passed,
    }
    return [record], {}


def _cmd_regression(args, model):
    rows = appendix_regression()
    return [{"name": r.name, "expected": r.expected, "computed": r.computed, "abs_err": r.abs_err} for r in rows], {}


def _cmd_trace_contour(args, model):
    grid = ContourGrid(resolution=args.resolution)
    contours = scan_and_trace(grid, model, args.tol)
    rows = emit_contour(contours, args.coords)
    records = [{"branch": b, "coord1": c1, "coord2": c2} for b, c1, c2 in rows]
    polylines = []
    for poly in contours.polylines:
        pts = [[r[1], r[2]] for r in emit_contour(type(contours)([poly], grid), args.coords)]
        polylines.append({"branch": poly.branch, "points": pts})
    extra = {
        "coords": args.coords,
        "polylines": polylines,
        "skipped_cells": contours.skipped_cells,
        "rejected_crossings": contours.rejected_crossings,
    }
    return records, extra


_DISPATCH = {
    "critical-angle": _cmd_critical_angle,
    "solve-scalene": _cmd_solve_scalene,
    "solve-isosceles": _cmd_solve_isosceles,
    "enumerate": _cmd_enumerate,
    "trace-contour": _cmd_trace_contour,
    "family-table": _cmd_family_table,
    "verify": _cmd_verify,
    "regression": _cmd_regression,
}
_CSV_HEADERS = {"trace-contour": ("branch", "coord1", "coord2")}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise PreconditionError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", choices=[v.value for v in Variant], default="attractive")
    common.add_argument("--charge", type=float, action="append", help="body charge; give three times with --model charged")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="output path (default: stdout)")
    common.add_argument("--degrees", action="store_true", help="read input angles in degrees")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--metadata", action="store_true", help="include run metadata in JSON output")

    parser = _Parser(prog="meridian-re", description="Relative equilibria of three equal masses on a rotating meridian.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("critical-angle", parents=[common], help="largest arc a_c of the scalene family")
    p = sub.add_parser("solve-scalene", parents=[common], help="scalene pair for a largest arc")
    p.add_argument("--a", type=float)
    p.add_argument("--cos-a", type=float)
    p = sub.add_parser("solve-isosceles", parents=[common], help="isosceles equilibrium for an equal arc")
    p.add_argument("--theta", type=float)
    p = sub.add_parser("enumerate", parents=[common], help="all equilibria with theta2 - theta1 = a")
    p.add_argument("--a", type=float)
    p = sub.add_parser("trace-contour", parents=[common], help="zero set of the shape condition")
    p.add_argument("--resolution", type=int, default=800)
    p.add_argument("--coords", choices=("xa", "ya"), default="xa")
    p = sub.add_parser("family-table", parents=[common], help="scalene family sampled in cos(a)")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--cos-a-start", type=float, default=DEFAULT_TABLE_START)
    p = sub.add_parser("verify", parents=[common], help="equation-of-motion residuals of a configuration")
    for k in (1, 2, 3):
        p.add_argument(f"--theta{k}", type=float)
    p.add_argument("--omega-sq", type=float)
    p.add_argument("--s", type=int, choices=(1, -1), default=1)
    sub.add_parser("regression", parents=[common], help="exact-value fixture at cos(a) = -1/8")
    return parser


def _input_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "metadata")}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not (math.isfinite(args.tol) and args.tol > 0.0):
            raise PreconditionError("--tol must be a positive number")
        model = _model(args)
        records, extra = _DISPATCH[args.command](args, model)
        meta = {"command": args.command, "input": _input_echo(args)}
        if args.metadata:
            meta["metadata"] = {"version": __version__, "python": sys.version.split()[0]}
        data = emit(records, args.format, {**meta, **extra}, _CSV_HEADERS.get(args.command))
    except MeridianError as exc:
        print(f"error: {exc.code}: {exc}", file=stderr)
        return exc.exit_status
    except (ValueError, ArithmeticError) as exc:
        print(f"error: INTERNAL: {exc}", file=stderr)
        return 6

    try:
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(data)
        else:
            stdout.write(data)
            stdout.flush()
    except OSError as exc:
        print(f"error: IO: {exc}", file=stderr)
        return IO_ERROR_STATUS
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
