import csv
import json

import pytest

from bloch_synthesis.cli import build_parser, random_targets, run
from bloch_synthesis.services import SynthesisEngine


def _error(capsys):
    err = capsys.readouterr().err.strip().splitlines()
    return json.loads(err[-1])


def _header(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return next(csv.reader(handle))


def test_compare_prints_json(settings, capsys):
    assert run(["compare", "--alpha", "0.005"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert 0.77 <= payload["ratio"] <= 0.80


def test_target_in_exclusion_disk(settings, capsys):
    code = run(["synth", "--alpha", "0.25", "--beta", "0.785398163", "--target", "0,0,-1"])
    assert code == 2
    assert _error(capsys)["error"] == "TargetInCutLocusNeighborhood"


def test_bad_arguments_exit_2(settings, capsys):
    assert run(["synth", "--target", "0,0,1"]) == 2
    assert _error(capsys)["error"] == "InvalidArguments"
    assert run(["frobnicate"]) == 2
    assert _error(capsys)["error"] == "InvalidArguments"
    assert run(["synth", "--alpha", "0.9", "--target", "0,0,1"]) == 2
    assert _error(capsys)["error"] == "AlphaOutOfRange"


def test_synth_solves(settings, capsys):
    code = run(["synth", "--alpha", "0.25", "--target", "0.2,0.1,0.97"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["residual"] < 1e-9
    assert payload["family"] in {"pp", "pm", "mm", "mp"}


def test_extremal_csv(settings, tmp_path):
    out = tmp_path / "traj.csv"
    args = ["extremal", "--alpha", "0.25", "--family", "pm", "--s", "0.5", "--time", "3.0"]
    assert run(args + ["--out", str(out)]) == 0
    assert _header(out) == ["t", "u1", "u2", "x1", "x2", "x3"]
    with open(out, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    assert float(rows[-1][0]) == pytest.approx(3.0)


def test_trace_csv(settings, tmp_path):
    out = tmp_path / "trace.csv"
    args = ["trace", "--alpha", "0.25", "--theta", "1.0", "--horizon", "6.0", "--out", str(out)]
    assert run(args) == 0
    assert _header(out) == ["t", "phi0", "phi1", "phi2", "event"]


def test_front_csv(settings, tmp_path, capsys):
    out = tmp_path / "front.csv"
    args = ["front", "--alpha", "0.25", "--time", "2.0", "--samples", "36", "--out", str(out)]
    assert run(args) == 0
    assert _header(out) == ["theta", "x1", "x2", "x3"]
    summary = json.loads(capsys.readouterr().out)
    assert summary["samples"] == 36


def test_curves_and_loci_csv(settings, tmp_path):
    curves = tmp_path / "curves.csv"
    args = ["curves", "--alpha", "0.1", "--k", "1", "2", "--samples", "6", "--out", str(curves)]
    assert run(args) == 0
    assert _header(curves) == ["k", "s", "x1", "x2", "x3", "c1", "c2", "locally_optimal"]
    with open(curves, newline="", encoding="utf-8") as handle:
        assert len(list(csv.reader(handle))) == 13

    loci = tmp_path / "loci.csv"
    assert run(["loci", "--alpha", "0.1", "--samples", "12", "--out", str(loci)]) == 0
    assert _header(loci) == ["label", "u1", "u2", "x1", "x2", "x3"]


def test_suboptimal_json(settings, tmp_path):
    out = tmp_path / "s2.json"
    assert run(["suboptimal", "--alpha", "0.1", "--strategy", "s2", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["miss_angle"] < 1e-8
    assert "schedule" not in payload


def test_oracle_single_target(settings, capsys):
    args = ["oracle", "--alpha", "0.25", "--target", "0.1,0.0,0.995", "--dt", "0.05"]
    assert run(args) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["t_lo"] <= payload["t_hi"]


def test_oracle_needs_targets(settings, capsys):
    assert run(["oracle", "--alpha", "0.25"]) == 2
    assert _error(capsys)["error"] == "InvalidArguments"


def test_random_targets_avoid_disk(settings):
    engine = SynthesisEngine.from_arguments(settings, alpha=0.25)
    targets = random_targets(engine, 20, seed=5)
    assert len(targets) == 20
    assert all(t.x3 > -0.75 for t in targets)
    assert targets == random_targets(engine, 20, seed=5)


def test_verify_switching_suite(settings, tmp_path):
    out = tmp_path / "verify.json"
    assert run(["verify", "--suite", "switching", "--seed", "1", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert report["seed"] == 1


def test_parser_defaults():
    parser = build_parser()
    args = parser.parse_args(["oracle", "--alpha", "0.2"])
    assert (args.dt, args.eps, args.target, args.random) == (0.02, 0.05, [], 0)
    assert parser.parse_args(["verify"]).suite == "all"
    assert parser.parse_args(["suboptimal", "--alpha", "0.1"]).strategy == "s2"
    assert parser.parse_args(["extremal", "--s", "1", "--time", "2", "--out", "x.csv"]).dt == 0.01
