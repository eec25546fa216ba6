"""Parameter sweeps and one-dimensional optimization over the detector model.

Everything here drives the closed-form model in :mod:`mirrorsteer.detector_model`
along a single axis: detector separation, distance to the mirror, or the gap
of detector B.  Sweeps tabulate the full set of observables per grid point;
peak and transition finders refine features of those curves to 1e-6 in the
swept variable.  The figure builders reproduce the standard curve families
(steering versus separation, versus mirror distance, versus detector gap,
and the alignment difference) as labelled tables.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .detector_model import (
    Alignment,
    BoundaryGeometry,
    DetectorPair,
    boundary_free_steering,
    config_difference,
    correlations,
    steering_from_block,
)
from .errors import ValidationError
from .xstate_steering import SteeringResult

__all__ = [
    "SweepVariable",
    "SweepScale",
    "SweepAxis",
    "SweepRow",
    "SweepTable",
    "DifferenceRow",
    "DifferenceTable",
    "Objective",
    "PeakResult",
    "Direction",
    "TransitionKind",
    "TransitionResult",
    "FigureId",
    "sweep",
    "find_peak",
    "find_transition",
    "figure_dataset",
]

REFINE_TOL = 1e-6

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


class SweepVariable(enum.Enum):
    SEPARATION = "separation"
    BOUNDARY_DISTANCE = "boundary-distance"
    OMEGA_B = "omega-b"


class SweepScale(enum.Enum):
    LINEAR = "linear"
    LOG = "log"


class Objective(enum.Enum):
    S_AB = "sab"
    S_BA = "sba"
    ASYMMETRY = "asym"


class Direction(enum.Enum):
    A_TO_B = "ab"
    B_TO_A = "ba"


class TransitionKind(enum.Enum):
    SUDDEN_DEATH = "sudden-death"
    SUDDEN_BIRTH = "sudden-birth"


class FigureId(enum.Enum):
    FIG2 = "fig2"
    FIG4 = "fig4"
    FIG5 = "fig5"
    FIG6 = "fig6"
    FIG7 = "fig7"


@dataclass(frozen=True)
class SweepAxis:
    """One-dimensional grid specification for :func:`sweep`."""

    variable: SweepVariable
    start: float
    stop: float
    points: int
    scale: SweepScale = SweepScale.LINEAR

    def __post_init__(self):
        object.__setattr__(self, "variable", SweepVariable(self.variable))
        object.__setattr__(self, "scale", SweepScale(self.scale))
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("sweep range must be finite")
        if not self.start < self.stop:
            raise ValidationError(
                f"sweep range is empty: start {self.start} must be below stop {self.stop}"
            )
        if self.points < 2:
            raise ValidationError("a sweep needs at least 2 grid points")
        if self.scale is SweepScale.LOG and self.start <= 0.0:
            raise ValidationError("log-scaled sweeps need a positive start")

    def grid(self) -> np.ndarray:
        if self.scale is SweepScale.LOG:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    p_a: float
    p_b: float
    abs_c: float
    abs_x: float
    s_ab: float
    s_ba: float
    asymmetry: float
    concurrence: float


@dataclass(frozen=True)
class SweepTable:
    variable: SweepVariable
    rows: tuple[SweepRow, ...]
    label: str = ""

    def column(self, name: str) -> list[float]:
        return [getattr(row, name) for row in self.rows]


@dataclass(frozen=True)
class DifferenceRow:
    axis_value: float
    delta_s_ab: float
    delta_s_ba: float


@dataclass(frozen=True)
class DifferenceTable:
    variable: SweepVariable
    rows: tuple[DifferenceRow, ...]
    label: str = ""


@dataclass(frozen=True)
class PeakResult:
    location: float
    value: float
    bracket: tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class TransitionResult:
    location: float
    kind: TransitionKind
    direction: Direction


def _apply(
    pair: DetectorPair,
    geom: BoundaryGeometry,
    variable: SweepVariable,
    value: float,
) -> tuple[DetectorPair, BoundaryGeometry]:
    """Return copies of the pair and geometry with one field overridden."""
    if variable is SweepVariable.SEPARATION:
        return pair, dataclasses.replace(geom, separation=value)
    if variable is SweepVariable.BOUNDARY_DISTANCE:
        return pair, dataclasses.replace(geom, boundary_distance=value)
    return DetectorPair(pair.omega_a, value, coupling=pair.coupling), geom


def _evaluate(
    pair: DetectorPair,
    geom: BoundaryGeometry,
    variable: SweepVariable,
    value: float,
) -> tuple[SweepRow, SteeringResult]:
    try:
        pair_v, geom_v = _apply(pair, geom, variable, value)
        block = correlations(pair_v, geom_v)
        res = steering_from_block(block)
    except Exception as exc:
        raise type(exc)(f"at {variable.value} = {value:g}: {exc}") from exc
    row = SweepRow(
        axis_value=float(value),
        p_a=block.p_a,
        p_b=block.p_b,
        abs_c=abs(block.c),
        abs_x=abs(block.x),
        s_ab=res.s_ab,
        s_ba=res.s_ba,
        asymmetry=res.asymmetry,
        concurrence=res.concurrence,
    )
    return row, res


def sweep(pair: DetectorPair, geom: BoundaryGeometry, axis: SweepAxis) -> SweepTable:
    """Tabulate the harvested observables along one parameter axis.

    The swept variable overrides the matching field of ``pair`` or ``geom``
    at each grid point; all other fields are held fixed.  Model errors are
    re-raised with the offending grid point named.
    """
    rows = tuple(
        _evaluate(pair, geom, axis.variable, value)[0] for value in axis.grid()
    )
    return SweepTable(variable=axis.variable, rows=rows)


def _objective_value(
    pair: DetectorPair,
    geom: BoundaryGeometry,
    variable: SweepVariable,
    value: float,
    objective: Objective,
) -> float:
    _, res = _evaluate(pair, geom, variable, value)
    if objective is Objective.S_AB:
        return res.s_ab
    if objective is Objective.S_BA:
        return res.s_ba
    return res.asymmetry


def find_peak(
    pair: DetectorPair,
    geom: BoundaryGeometry,
    variable: SweepVariable,
    bracket: tuple[float, float],
    objective: Objective,
    objective_fn: Callable[[float], float] | None = None,
) -> PeakResult:
    """Locate an interior maximum of a steering objective by golden section.

    The bracket must already isolate a peak: the midpoint value has to
    exceed both endpoint values, otherwise the search is refused.  The
    returned location is resolved to within ``REFINE_TOL``.
    """
    variable = SweepVariable(variable)
    objective = Objective(objective)
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValidationError("peak bracket must satisfy lo < hi")
    if objective_fn is None:
        objective_fn = lambda v: _objective_value(pair, geom, variable, v, objective)

    f_lo = objective_fn(lo)
    f_hi = objective_fn(hi)
    mid = 0.5 * (lo + hi)
    f_mid = objective_fn(mid)
    if not (f_mid > f_lo and f_mid > f_hi):
        raise ValidationError(
            "bracket midpoint does not dominate the endpoints; run a coarse "
            "sweep first to isolate the peak"
        )

    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = objective_fn(c)
    fd = objective_fn(d)
    iterations = 0
    while (b - a) > REFINE_TOL:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = objective_fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = objective_fn(d)
        iterations += 1

    location, value = (c, fc) if fc > fd else (d, fd)
    if f_mid > value:
        location, value = mid, f_mid
    return PeakResult(
        location=location, value=value, bracket=(lo, hi), iterations=iterations
    )


def find_transition(
    pair: DetectorPair,
    geom: BoundaryGeometry,
    variable: SweepVariable,
    bracket: tuple[float, float],
    direction: Direction,
    indicator_fn: Callable[[float], bool] | None = None,
) -> TransitionResult:
    """Bisect for the boundary between steerable and unsteerable parameters.

    ``direction`` selects which steering direction is probed.  The bracket
    endpoints must disagree on whether steering is present; the crossing is
    then resolved to within ``REFINE_TOL`` and classified as a sudden death
    (live side below) or sudden birth (live side above).
    """
    variable = SweepVariable(variable)
    direction = Direction(direction)
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValidationError("transition bracket must satisfy lo < hi")
    if indicator_fn is None:

        def indicator_fn(v: float) -> bool:
            _, res = _evaluate(pair, geom, variable, v)
            s = res.s_ab if direction is Direction.A_TO_B else res.s_ba
            return s > 0.0

    live_lo = indicator_fn(lo)
    live_hi = indicator_fn(hi)
    if live_lo == live_hi:
        raise ValidationError(
            "transition bracket endpoints agree; pick a bracket that "
            "straddles the boundary"
        )

    a, b = lo, hi
    while (b - a) > REFINE_TOL:
        mid = 0.5 * (a + b)
        if indicator_fn(mid) == live_lo:
            a = mid
        else:
            b = mid
    kind = TransitionKind.SUDDEN_DEATH if live_lo else TransitionKind.SUDDEN_BIRTH
    return TransitionResult(location=0.5 * (a + b), kind=kind, direction=direction)


def _figure_sweep(
    pair: DetectorPair,
    geom: BoundaryGeometry,
    axis: SweepAxis,
    label: str,
) -> SweepTable:
    table = sweep(pair, geom, axis)
    return dataclasses.replace(table, label=label)


def figure_dataset(
    figure_id: FigureId | str,
    pair: DetectorPair | None = None,
    resolution: int = 200,
    separations: Sequence[float] = (0.05, 2.0),
    omega_b_values: Sequence[float] = (0.1, 0.2, 0.3),
) -> dict[str, SweepTable | DifferenceTable]:
    """Build the labelled table set behind one of the standard figures.

    ``fig2``/``fig4``: steering versus separation at mirror distance 1 for a
    family of detector-B gaps, parallel and orthogonal respectively.
    ``fig5``: steering versus mirror distance at separation 0.05, both
    alignments, plus a constant boundary-free reference table.
    ``fig6``: steering versus the detector-B gap at mirror distance 1, for
    each alignment at each entry of ``separations``.
    ``fig7``: the orthogonal-minus-parallel steering difference versus
    separation at mirror distance 1, alongside the two alignment sweeps
    it is derived from.
    """
    figure_id = FigureId(figure_id)
    if pair is None:
        pair = DetectorPair(omega_a=0.1, omega_b=0.1)
    if resolution < 2:
        raise ValidationError("figure datasets need at least 2 grid points")

    if figure_id in (FigureId.FIG2, FigureId.FIG4):
        alignment = (
            Alignment.PARALLEL if figure_id is FigureId.FIG2 else Alignment.ORTHOGONAL
        )
        axis = SweepAxis(SweepVariable.SEPARATION, 0.05, 3.0, resolution)
        out: dict[str, SweepTable | DifferenceTable] = {}
        for omega_b in omega_b_values:
            curve_pair = DetectorPair(pair.omega_a, omega_b, coupling=pair.coupling)
            geom = BoundaryGeometry(alignment, separation=1.0, boundary_distance=1.0)
            label = f"{alignment.value} omega_b={omega_b:.2f}"
            out[label] = _figure_sweep(curve_pair, geom, axis, label)
        return out

    if figure_id is FigureId.FIG5:
        axis = SweepAxis(SweepVariable.BOUNDARY_DISTANCE, 1e-4, 8.0, resolution)
        out = {}
        for alignment in (Alignment.PARALLEL, Alignment.ORTHOGONAL):
            geom = BoundaryGeometry(alignment, separation=0.05, boundary_distance=1.0)
            out[alignment.value] = _figure_sweep(pair, geom, axis, alignment.value)
        free = boundary_free_steering(pair, 0.05)
        free_rows = tuple(
            SweepRow(
                axis_value=float(v),
                p_a=float("nan"),
                p_b=float("nan"),
                abs_c=float("nan"),
                abs_x=float("nan"),
                s_ab=free.s_ab,
                s_ba=free.s_ba,
                asymmetry=free.asymmetry,
                concurrence=free.concurrence,
            )
            for v in axis.grid()
        )
        out["boundary_free"] = SweepTable(
            variable=axis.variable, rows=free_rows, label="boundary_free"
        )
        return out

    if figure_id is FigureId.FIG6:
        axis = SweepAxis(SweepVariable.OMEGA_B, pair.omega_a, 6.0, resolution)
        out = {}
        for alignment in (Alignment.PARALLEL, Alignment.ORTHOGONAL):
            for separation in separations:
                geom = BoundaryGeometry(
                    alignment, separation=separation, boundary_distance=1.0
                )
                label = f"{alignment.value} L={separation:.2f}"
                out[label] = _figure_sweep(pair, geom, axis, label)
        return out

    axis = SweepAxis(SweepVariable.SEPARATION, 0.05, 3.0, resolution)
    out = {}
    for alignment in (Alignment.PARALLEL, Alignment.ORTHOGONAL):
        geom = BoundaryGeometry(alignment, separation=1.0, boundary_distance=1.0)
        out[alignment.value] = _figure_sweep(pair, geom, axis, alignment.value)
    diff_rows = tuple(
        DifferenceRow(axis_value=float(v), delta_s_ab=d_ab, delta_s_ba=d_ba)
        for v in axis.grid()
        for d_ab, d_ba in (config_difference(pair, float(v), 1.0),)
    )
    out["difference"] = DifferenceTable(
        variable=axis.variable, rows=diff_rows, label="difference"
    )
    return out
