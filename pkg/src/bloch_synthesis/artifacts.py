"""
CSV and JSON writers for the CLI artifacts.

Floats are written with 17 significant digits so a file read back reproduces
the computed values exactly.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Tuple, Union

from pydantic import BaseModel

from .models import FrontReport, LocusCurve, RefractionResult, SwitchCurveSample, Trajectory

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

TRAJECTORY_HEADER = ["t", "u1", "u2", "x1", "x2", "x3"]
SWITCHING_TRACE_HEADER = ["t", "phi0", "phi1", "phi2", "event"]
CURVE_HEADER = ["k", "s", "x1", "x2", "x3", "c1", "c2", "locally_optimal"]
FRONT_HEADER = ["theta", "x1", "x2", "x3"]
LOCI_HEADER = ["label", "u1", "u2", "x1", "x2", "x3"]


def fmt(value: float) -> str:
    return f"{float(value):.17g}"


def _write_rows(path: PathLike, header: List[str], rows: Iterable[Sequence[Any]]) -> int:
    count = 0
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    logger.info(f"wrote {count} rows to {path}")
    return count


def write_trajectory_csv(path: PathLike, trajectory: Trajectory) -> int:
    rows = (
        [fmt(t), fmt(u[0]), fmt(u[1]), fmt(x[0]), fmt(x[1]), fmt(x[2])]
        for t, u, x in zip(trajectory.times, trajectory.controls, trajectory.states)
    )
    return _write_rows(path, TRAJECTORY_HEADER, rows)


def write_switching_trace_csv(
    path: PathLike, rows: Iterable[Tuple[float, float, float, float, str]]
) -> int:
    formatted = ([fmt(t), fmt(p0), fmt(p1), fmt(p2), event] for t, p0, p1, p2, event in rows)
    return _write_rows(path, SWITCHING_TRACE_HEADER, formatted)


def write_curves_csv(
    path: PathLike, samples: Iterable[Tuple[SwitchCurveSample, RefractionResult]]
) -> int:
    """One row per switching-curve sample with its refraction coefficients."""
    rows = (
        [
            str(sample.k),
            fmt(sample.s),
            *[fmt(c) for c in sample.point.as_list()],
            fmt(result.c1),
            fmt(result.c2),
            "true" if result.locally_optimal else "false",
        ]
        for sample, result in samples
    )
    return _write_rows(path, CURVE_HEADER, rows)


def write_front_csv(path: PathLike, front: FrontReport) -> int:
    rows = (
        [fmt(sample.theta), *[fmt(c) for c in sample.endpoint.as_list()]]
        for sample in front.samples
    )
    return _write_rows(path, FRONT_HEADER, rows)


def write_loci_csv(path: PathLike, loci: Sequence[LocusCurve]) -> int:
    def control_text(value: Any) -> str:
        return "free" if value is None else fmt(value)

    rows = (
        [curve.label, control_text(curve.control[0]), control_text(curve.control[1])]
        + [fmt(c) for c in point]
        for curve in loci
        for point in curve.points
    )
    return _write_rows(path, LOCI_HEADER, rows)


def to_payload(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    return value


def dump_json(value: Any) -> str:
    return json.dumps(to_payload(value), indent=2)


def write_json(path: PathLike, value: Any) -> None:
    Path(path).write_text(dump_json(value) + "\n", encoding="utf-8")
    logger.info(f"wrote {path}")
