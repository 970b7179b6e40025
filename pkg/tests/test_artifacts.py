import csv
import json
import math

from bloch_synthesis.adjoint import switching_trace_rows
from bloch_synthesis.artifacts import (
    CURVE_HEADER,
    FRONT_HEADER,
    LOCI_HEADER,
    SWITCHING_TRACE_HEADER,
    TRAJECTORY_HEADER,
    fmt,
    write_curves_csv,
    write_front_csv,
    write_json,
    write_loci_csv,
    write_switching_trace_csv,
    write_trajectory_csv,
)
from bloch_synthesis.core import simulate
from bloch_synthesis.models import NORTH, ControlSchedule, FamilyTag, RefractionResult
from bloch_synthesis.synthesis import extremal_front, singular_loci, switching_curve


def _read(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


def test_fmt_is_exact():
    for value in (math.pi, 1e-300, -2.5, 0.1):
        assert float(fmt(value)) == value


def test_trajectory_csv(tmp_path, params):
    sched = ControlSchedule.from_pairs([((1.0, 1.0), 0.5), ((1.0, -1.0), 0.25)])
    traj = simulate(NORTH, sched, params, dt=0.1)
    path = tmp_path / "traj.csv"
    assert write_trajectory_csv(path, traj) == len(traj)
    rows = _read(path)
    assert rows[0] == TRAJECTORY_HEADER
    assert float(rows[-1][0]) == traj.times[-1]
    assert [float(c) for c in rows[-1][3:]] == list(traj.states[-1])
    assert rows[-1][1:3] == ["1", "-1"]


def test_switching_trace_csv(tmp_path, params):
    rows = switching_trace_rows(3.6, 6.0, params, dt=0.5)
    path = tmp_path / "trace.csv"
    write_switching_trace_csv(path, rows)
    table = _read(path)
    assert table[0] == SWITCHING_TRACE_HEADER
    assert {row[4] for row in table[1:]} <= {"none", "swi1", "swi2"}
    assert len(table) == len(rows) + 1


def test_curves_csv(tmp_path, params):
    samples = switching_curve(1, [0.2, 0.4], FamilyTag.PP, params)
    verdict = RefractionResult(c1=1.0, c2=-0.5, residual=0.0, locally_optimal=True)
    path = tmp_path / "curves.csv"
    write_curves_csv(path, [(s, verdict) for s in samples])
    table = _read(path)
    assert table[0] == CURVE_HEADER
    assert table[1][0] == "1"
    assert table[1][-1] == "true"


def test_front_and_loci_csv(tmp_path, params):
    front = extremal_front(1.0, 16, params)
    write_front_csv(tmp_path / "front.csv", front)
    table = _read(tmp_path / "front.csv")
    assert table[0] == FRONT_HEADER
    assert len(table) == 17

    write_loci_csv(tmp_path / "loci.csv", singular_loci(params, 10))
    table = _read(tmp_path / "loci.csv")
    assert table[0] == LOCI_HEADER
    assert len(table) == 51
    assert table[1][:3] == ["C0", "0", "0"]


def test_write_json(tmp_path):
    verdict = RefractionResult(c1=1.0, c2=-0.5, residual=0.0, locally_optimal=True)
    path = tmp_path / "out.json"
    write_json(path, verdict)
    expected = {"c1": 1.0, "c2": -0.5, "residual": 0.0, "locally_optimal": True}
    assert json.loads(path.read_text()) == expected
