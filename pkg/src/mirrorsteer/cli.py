"""Command-line front end.

Subcommands: ``compute`` (single parameter point, JSON by default),
``sweep`` (one-axis tabulation, CSV by default), ``optimize`` (peak
refinement), ``verify`` (closed forms against the direct quadrature
oracle), and ``figure`` (canonical curve families, one CSV per curve).

Exit codes: 0 on success, 2 on validation errors, 3 on numerical
convergence failures.  Physical parameters have no silent defaults except
the coupling, which defaults to 1 and is echoed in all output metadata.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import pathlib
import re
import sys

from . import __version__
from .detector_model import (
    Alignment,
    BoundaryGeometry,
    DetectorPair,
    correlations,
    steering_from_block,
)
from .errors import ConvergenceError, ValidationError
from .integral_oracle import (
    QuadratureSpec,
    numeric_c,
    numeric_probability,
    numeric_x,
)
from .sweep_optimize import (
    DifferenceTable,
    FigureId,
    Objective,
    SweepAxis,
    SweepScale,
    SweepRow,
    SweepTable,
    SweepVariable,
    figure_dataset,
    find_peak,
    sweep,
)

CSV_HEADER = "axis,p_a,p_b,abs_c,abs_x,s_ab,s_ba,asymmetry,concurrence"
DIFF_CSV_HEADER = "axis,delta_s_ab,delta_s_ba"
VERIFY_TOLERANCE = 1e-3

# (omega_a, omega_b, separation, boundary_distance); each entry is run in
# both alignments
VERIFY_GRID_DEFAULT = (
    (0.0, 0.0, 0.5, 0.5),
    (0.0, 0.0, 1.0, 1.0),
    (0.1, 0.1, 0.5, 1.0),
    (0.1, 0.1, 1.0, 0.5),
    (0.1, 0.1, 2.0, 2.0),
    (1.0, 1.0, 1.0, 1.0),
    (1.0, 1.0, 0.5, 2.0),
    (0.0, 1.0, 1.0, 2.0),
    (0.1, 1.0, 2.0, 0.5),
    (0.0, 0.1, 2.0, 1.0),
)
VERIFY_GRID_SMOKE = (
    (0.1, 0.1, 0.5, 1.0),
    (0.0, 1.0, 1.0, 2.0),
)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_text(path: str | None, text: str) -> None:
    """Write to stdout, or atomically to a file via a temp-and-rename."""
    if path is None:
        sys.stdout.write(text)
        return
    target = pathlib.Path(path)
    if target.parent != pathlib.Path(""):
        target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_name(target.name + f".tmp-{os.getpid()}")
    tmp.write_text(text)
    os.replace(tmp, target)


def _config_hash(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True)
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def _provenance(config: dict, quadrature: QuadratureSpec | None = None) -> dict:
    block = {"version": __version__, "config_hash": _config_hash(config)}
    if quadrature is not None:
        block["quadrature"] = {
            "truncation": quadrature.truncation,
            "nodes": quadrature.nodes,
            "epsilons": list(quadrature.epsilons),
        }
    return block


def _comment_lines(params: dict) -> list[str]:
    return [f"# {key} = {value}" for key, value in params.items()]


def _sweep_csv(table: SweepTable, params: dict) -> str:
    lines = _comment_lines(params)
    lines.append(CSV_HEADER)
    for row in table.rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    row.axis_value,
                    row.p_a,
                    row.p_b,
                    row.abs_c,
                    row.abs_x,
                    row.s_ab,
                    row.s_ba,
                    row.asymmetry,
                    row.concurrence,
                )
            )
        )
    return "\n".join(lines) + "\n"


def _difference_csv(table: DifferenceTable, params: dict) -> str:
    lines = _comment_lines(params)
    lines.append(DIFF_CSV_HEADER)
    for row in table.rows:
        lines.append(
            ",".join(_fmt(v) for v in (row.axis_value, row.delta_s_ab, row.delta_s_ba))
        )
    return "\n".join(lines) + "\n"


def _pair_geom(args) -> tuple[DetectorPair, BoundaryGeometry, dict]:
    pair = DetectorPair(args.omega_a, args.omega_b, coupling=args.coupling)
    geom = BoundaryGeometry(
        alignment=args.alignment,
        separation=args.l,
        boundary_distance=args.dz,
    )
    config = {
        "alignment": geom.alignment.value,
        "omega_a": pair.omega_a,
        "omega_b": pair.omega_b,
        "l": geom.separation,
        "dz": geom.boundary_distance,
        "lambda": pair.coupling,
    }
    return pair, geom, config


def _cmd_compute(args) -> int:
    pair, geom, config = _pair_geom(args)
    block = correlations(pair, geom)
    res = steering_from_block(block)
    record = dict(config)
    record.update(
        p_a=block.p_a,
        p_b=block.p_b,
        abs_c=abs(block.c),
        abs_x=abs(block.x),
        s_ab=res.s_ab,
        s_ba=res.s_ba,
        asymmetry=res.asymmetry,
        concurrence=res.concurrence,
    )
    record["provenance"] = _provenance(config)
    if args.format == "csv":
        row = SweepRow(
            axis_value=geom.separation,
            p_a=block.p_a,
            p_b=block.p_b,
            abs_c=abs(block.c),
            abs_x=abs(block.x),
            s_ab=res.s_ab,
            s_ba=res.s_ba,
            asymmetry=res.asymmetry,
            concurrence=res.concurrence,
        )
        table = SweepTable(variable=SweepVariable.SEPARATION, rows=(row,))
        params = dict(config, axis="separation")
        _write_text(args.out, _sweep_csv(table, params))
    else:
        _write_text(args.out, json.dumps(record, indent=2) + "\n")
    return 0


def _cmd_sweep(args) -> int:
    pair, geom, config = _pair_geom(args)
    axis = SweepAxis(
        variable=args.axis,
        start=args.start,
        stop=args.stop,
        points=args.points,
        scale=SweepScale.LOG if args.log else SweepScale.LINEAR,
    )
    table = sweep(pair, geom, axis)
    params = dict(config, axis=axis.variable.value, scale=axis.scale.value)
    if args.format == "json":
        payload = dict(config)
        payload["axis"] = axis.variable.value
        payload["scale"] = axis.scale.value
        payload["rows"] = [dataclasses.asdict(row) for row in table.rows]
        payload["provenance"] = _provenance(params)
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    else:
        _write_text(args.out, _sweep_csv(table, params))
    return 0


def _parse_bracket(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError("--bracket expects two comma-separated numbers, e.g. 0.2,6.0")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ValidationError(f"--bracket values must be numeric: {exc}") from exc


def _cmd_optimize(args) -> int:
    pair, geom, config = _pair_geom(args)
    bracket = _parse_bracket(args.bracket)
    res = find_peak(
        pair,
        geom,
        variable=SweepVariable(args.axis),
        bracket=bracket,
        objective=Objective(args.objective),
    )
    record = dict(config)
    record.update(
        axis=args.axis,
        objective=args.objective,
        location=res.location,
        value=res.value,
        bracket=list(res.bracket),
        iterations=res.iterations,
    )
    record["provenance"] = _provenance(config)
    _write_text(args.out, json.dumps(record, indent=2) + "\n")
    return 0


def _cmd_verify(args) -> int:
    grid = VERIFY_GRID_SMOKE if args.grid == "smoke" else VERIFY_GRID_DEFAULT
    spec = QuadratureSpec()
    worst = {"p_a": 0.0, "p_b": 0.0, "c": 0.0, "x": 0.0}
    for omega_a, omega_b, separation, boundary_distance in grid:
        pair = DetectorPair(omega_a, omega_b)
        for alignment in (Alignment.PARALLEL, Alignment.ORTHOGONAL):
            geom = BoundaryGeometry(alignment, separation, boundary_distance)
            block = correlations(pair, geom)
            oracle = {
                "p_a": numeric_probability(
                    pair.omega_a, geom.boundary_distance, spec=spec, rtol=args.rtol
                ),
                "p_b": numeric_probability(
                    pair.omega_b, geom.distance_b(), spec=spec, rtol=args.rtol
                ),
                "c": numeric_c(pair, geom, spec=spec, rtol=args.rtol),
                "x": numeric_x(pair, geom, spec=spec, rtol=args.rtol),
            }
            closed = {"p_a": block.p_a, "p_b": block.p_b, "c": block.c, "x": block.x}
            for key, reference in oracle.items():
                dev = abs(closed[key] - reference) / abs(reference)
                worst[key] = max(worst[key], dev)

    lines = [f"{'observable':<12}{'max rel deviation':<20}{'tolerance':<12}"]
    for key, dev in worst.items():
        lines.append(f"{key:<12}{dev:<20.3e}{VERIFY_TOLERANCE:<12.1e}")
    passed = all(dev <= VERIFY_TOLERANCE for dev in worst.values())
    verdict = "PASS" if passed else "FAIL"
    lines.append(
        f"verify: {verdict} (grid={args.grid}, "
        f"{len(grid)} configurations x 2 alignments)"
    )
    print("\n".join(lines))
    if args.format == "json" or args.out:
        config = {"grid": args.grid, "rtol": args.rtol}
        payload = {
            "grid": args.grid,
            "tolerance": VERIFY_TOLERANCE,
            "max_rel_deviation": worst,
            "passed": passed,
            "provenance": _provenance(config, quadrature=spec),
        }
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return 0 if passed else 1


_FIGURE_FIXED = {
    FigureId.FIG2: {"alignment": "parallel", "dz": 1.0, "axis": "separation"},
    FigureId.FIG4: {"alignment": "orthogonal", "dz": 1.0, "axis": "separation"},
    FigureId.FIG5: {"l": 0.05, "axis": "boundary-distance"},
    FigureId.FIG6: {"dz": 1.0, "axis": "omega-b"},
    FigureId.FIG7: {"dz": 1.0, "axis": "separation"},
}


def _cmd_figure(args) -> int:
    try:
        figure_id = FigureId(args.figure)
    except ValueError as exc:
        raise ValidationError(f"unknown figure id {args.figure!r}") from exc
    pair = DetectorPair(args.omega_a, args.omega_b, coupling=args.coupling)
    data = figure_dataset(
        figure_id,
        pair=pair,
        resolution=args.resolution,
        separations=(args.small_l, args.large_l),
    )
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for label, table in data.items():
        params = {
            "figure": figure_id.value,
            "curve": label,
            "omega_a": pair.omega_a,
            "omega_b": pair.omega_b,
            "lambda": pair.coupling,
            "resolution": args.resolution,
        }
        params.update(_FIGURE_FIXED[figure_id])
        name = re.sub(r"[^A-Za-z0-9.+-]+", "_", label) + ".csv"
        if isinstance(table, DifferenceTable):
            text = _difference_csv(table, params)
        else:
            text = _sweep_csv(table, params)
        _write_text(str(out_dir / name), text)
    print(f"wrote {len(data)} curve files to {out_dir}")
    return 0


def _add_physics_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--alignment", required=True, choices=["parallel", "orthogonal"]
    )
    parser.add_argument("--omega-a", type=float, required=True, dest="omega_a")
    parser.add_argument("--omega-b", type=float, required=True, dest="omega_b")
    parser.add_argument("--l", type=float, required=True, help="detector separation")
    parser.add_argument("--dz", type=float, required=True, help="distance to the mirror")
    parser.add_argument(
        "--lambda",
        type=float,
        default=1.0,
        dest="coupling",
        help="coupling strength (default 1, echoed in output)",
    )


def _add_axis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--axis",
        required=True,
        choices=[v.value for v in SweepVariable],
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorsteer",
        description="Directional steering harvested by two detectors near a mirror.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="evaluate a single parameter point")
    _add_physics_flags(p_compute)
    p_compute.add_argument("--format", choices=["csv", "json"], default="json")
    p_compute.add_argument("--out")
    p_compute.set_defaults(handler=_cmd_compute)

    p_sweep = sub.add_parser("sweep", help="tabulate observables along one axis")
    _add_physics_flags(p_sweep)
    _add_axis_flags(p_sweep)
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--log", action="store_true", help="log-spaced grid")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--out")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_opt = sub.add_parser("optimize", help="refine a steering peak inside a bracket")
    _add_physics_flags(p_opt)
    _add_axis_flags(p_opt)
    p_opt.add_argument("--bracket", required=True, help="two comma-separated numbers")
    p_opt.add_argument(
        "--objective", required=True, choices=[o.value for o in Objective]
    )
    p_opt.add_argument("--out")
    p_opt.set_defaults(handler=_cmd_optimize)

    p_verify = sub.add_parser(
        "verify", help="check closed forms against the quadrature oracle"
    )
    p_verify.add_argument("--grid", choices=["smoke", "default"], default="default")
    p_verify.add_argument(
        "--rtol",
        type=float,
        default=1e-3,
        help="relative tolerance requested from the oracle extrapolation",
    )
    p_verify.add_argument("--format", choices=["table", "json"], default="table")
    p_verify.add_argument("--out")
    p_verify.set_defaults(handler=_cmd_verify)

    p_fig = sub.add_parser("figure", help="emit a canonical figure dataset")
    p_fig.add_argument("figure", help="one of " + ", ".join(f.value for f in FigureId))
    p_fig.add_argument("--out", default=".")
    p_fig.add_argument("--resolution", type=int, default=200)
    p_fig.add_argument("--omega-a", type=float, default=0.1, dest="omega_a")
    p_fig.add_argument("--omega-b", type=float, default=0.1, dest="omega_b")
    p_fig.add_argument(
        "--lambda", type=float, default=1.0, dest="coupling",
        help="coupling strength (default 1, echoed in output)",
    )
    p_fig.add_argument(
        "--small-l", type=float, default=0.05, dest="small_l",
        help="small separation for the gap-sweep curves",
    )
    p_fig.add_argument(
        "--large-l", type=float, default=2.0, dest="large_l",
        help="large separation for the gap-sweep curves",
    )
    p_fig.set_defaults(handler=_cmd_figure)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
