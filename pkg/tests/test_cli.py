"""Command-line interface: artifacts, determinism, and exit codes."""
from __future__ import annotations

import filecmp
import io
import json
import os

import pytest

from diracomp.cli import main

SOLVE_1D = {
    "mass": 1.0,
    "geometry": {"kind": "one_dim"},
    "potential": {"family": "exponential",
                  "params": {"beta": 0.9, "b": 0.5}},
}

COMPARE_1D = {
    "mass": 1.0,
    "geometry": {"kind": "one_dim"},
    "potential_a": {"family": "exponential",
                    "params": {"beta": 0.5, "b": 1.0}},
    "potential_b": {"family": "exponential",
                    "params": {"beta": 0.4, "b": 1.0}},
}


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def read_csv_lines(path):
    return path.read_text(encoding="utf-8").splitlines()


# ----------------------------------------------------------------- solve

def test_solve_writes_artifacts(tmp_path, capsys):
    cfg = write_config(tmp_path, SOLVE_1D)
    out = tmp_path / "out"
    assert main(["solve", "--config", cfg, "--out", str(out)]) == 0
    doc = json.loads((out / "solution.json").read_text())
    assert doc["energy"] == pytest.approx(0.49233, abs=5e-5)
    assert doc["nodes"] == [0, 1]
    assert doc["norm"] == pytest.approx(1.0, abs=1e-9)
    lines = read_csv_lines(out / "wave.csv")
    assert lines[0] == "r,psi1,psi2"
    assert len(lines) > 100
    assert "energy = " in capsys.readouterr().out


def test_solve_is_deterministic(tmp_path):
    cfg = write_config(tmp_path, SOLVE_1D)
    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    assert main(["solve", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["solve", "--config", cfg, "--out", str(out2)]) == 0
    for name in ("solution.json", "wave.csv"):
        assert filecmp.cmp(out1 / name, out2 / name, shallow=False), name


def test_solve_reads_stdin(tmp_path, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(SOLVE_1D)))
    out = tmp_path / "out"
    assert main(["solve", "--out", str(out)]) == 0
    assert (out / "solution.json").exists()


def test_solve_tolerance_flags(tmp_path):
    cfg = write_config(tmp_path, SOLVE_1D)
    out = tmp_path / "out"
    code = main(["solve", "--config", cfg, "--out", str(out),
                 "--tol-energy", "1e-8", "--tol-int", "1e-9"])
    assert code == 0
    doc = json.loads((out / "solution.json").read_text())
    lo, hi = doc["energy_bracket"]
    assert hi - lo <= 2e-8


# ---------------------------------------------------------------- compare

def test_compare_writes_artifacts(tmp_path):
    cfg = write_config(tmp_path, COMPARE_1D)
    out = tmp_path / "out"
    code = main(["compare", "--config", cfg, "--out", str(out),
                 "--theorem", "1"])
    assert code == 0
    doc = json.loads((out / "report.json").read_text())
    assert doc["consistent"] is True
    assert [v["theorem"] for v in doc["verdicts"]] == [1]
    assert doc["energies"]["E_a"] < doc["energies"]["E_b"]
    assert (out / "curves" / "unit.csv").exists()
    lines = read_csv_lines(out / "curves" / "unit.csv")
    assert lines[0] == "r,value"
    pot = read_csv_lines(out / "potentials.csv")
    assert pot[0].split(",")[:4] == ["r", "V_a", "V_b", "dV"]
    assert "w_unit" in pot[0].split(",")


def test_compare_theorem_all_and_base_override(tmp_path):
    cfg = write_config(tmp_path, COMPARE_1D)
    out = tmp_path / "out"
    code = main(["compare", "--config", cfg, "--out", str(out),
                 "--theorem", "all", "--base", "b"])
    assert code == 0
    doc = json.loads((out / "report.json").read_text())
    assert [v["theorem"] for v in doc["verdicts"]] == [1, 2]
    # theorem 2 curves are weighted by the base wave; base b was forced
    assert all(v["base"] == "b" for v in doc["verdicts"])


def test_compare_inapplicable_pair_still_exits_zero(tmp_path, capsys):
    # wells deeper than 2m fail the depth hypothesis of the flat-weight
    # check; the verdict must be inapplicable, not an error
    doc = json.loads(json.dumps(COMPARE_1D))
    doc["potential_a"]["params"]["beta"] = 2.6
    doc["potential_b"]["params"]["beta"] = 2.5
    cfg = write_config(tmp_path, doc)
    out = tmp_path / "out"
    code = main(["compare", "--config", cfg, "--out", str(out),
                 "--theorem", "1"])
    assert code == 0
    rep = json.loads((out / "report.json").read_text())
    v = rep["verdicts"][0]
    assert v["applicable"] is False
    assert v["condition_holds"] is None


def test_compare_theorem_from_config(tmp_path):
    doc = dict(COMPARE_1D, theorem=2)
    cfg = write_config(tmp_path, doc)
    out = tmp_path / "out"
    assert main(["compare", "--config", cfg, "--out", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert [v["theorem"] for v in rep["verdicts"]] == [2]


def test_compare_rejects_wrong_sector_theorem(tmp_path, capsys):
    cfg = write_config(tmp_path, COMPARE_1D)
    code = main(["compare", "--config", cfg, "--out",
                 str(tmp_path / "out"), "--theorem", "5"])
    assert code == 1
    body = json.loads(capsys.readouterr().out)
    assert body["error"]["exit_code"] == 1


# -------------------------------------------------------------- reproduce

def test_reproduce_fig1(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["reproduce", "fig1", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "fig1" in text and "PASS" in text
    lines = read_csv_lines(out / "fig1" / "summary.csv")
    assert lines[0] == "value,expected,computed,abs_diff,tol,status"
    assert lines[1].startswith("E,") and lines[1].endswith(",pass")
    assert (out / "fig1" / "summary.md").exists()
    assert (out / "fig1" / "solution.json").exists()
    assert (out / "fig1" / "wave.csv").exists()


def test_reproduce_unknown_id(tmp_path, capsys):
    code = main(["reproduce", "nope", "--out", str(tmp_path / "out")])
    assert code == 1
    assert "unknown case id" in capsys.readouterr().err


# ------------------------------------------------------------------ sweep

def test_sweep_solve_monotone(tmp_path):
    sweep = {
        "mode": "solve",
        "template": SOLVE_1D,
        "parameters": [{"path": "potential.params.beta",
                        "start": 0.5, "stop": 0.9, "count": 5}],
    }
    cfg = write_config(tmp_path, sweep)
    out = tmp_path / "out"
    code = main(["sweep", "--config", cfg, "--out", str(out), "--jobs", "2"])
    assert code == 0
    lines = read_csv_lines(out / "sweep.csv")
    assert lines[0] == "potential.params.beta,E,nodes1,nodes2,status"
    assert len(lines) == 6
    energies = [float(row.split(",")[1]) for row in lines[1:]]
    # deeper wells bind more: E nonincreasing along the strength axis
    assert all(e1 >= e2 for e1, e2 in zip(energies, energies[1:]))
    assert all(row.endswith(",ok") for row in lines[1:])


def test_sweep_values_list_and_compare_mode(tmp_path):
    sweep = {
        "template": COMPARE_1D,
        "parameters": [{"path": "potential_b.params.beta",
                        "values": [0.35, 0.45]}],
    }
    cfg = write_config(tmp_path, sweep)
    out = tmp_path / "out"
    code = main(["sweep", "--config", cfg, "--out", str(out),
                 "--theorem", "1", "--jobs", "1"])
    assert code == 0
    lines = read_csv_lines(out / "sweep.csv")
    assert lines[0] == ("potential_b.params.beta,E_a,E_b,"
                        "thm1_holds,thm1_consistent,status")
    assert len(lines) == 3


def test_sweep_empty_range_header_only(tmp_path):
    sweep = {
        "mode": "solve",
        "template": SOLVE_1D,
        "parameters": [{"path": "potential.params.beta",
                        "start": 0.5, "stop": 0.9, "count": 0}],
    }
    cfg = write_config(tmp_path, sweep)
    out = tmp_path / "out"
    assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
    lines = read_csv_lines(out / "sweep.csv")
    assert lines == ["potential.params.beta,E,nodes1,nodes2,status"]


def test_sweep_point_failure_logged_and_continues(tmp_path, capsys):
    template = {
        "mass": 1.0,
        "geometry": {"kind": "radial", "d": 3, "j": 0.5, "tau": -1},
        "potential": {"family": "coulomb", "params": {"v": 0.5}},
    }
    sweep = {
        "mode": "solve",
        "template": template,
        "parameters": [{"path": "potential.params.v",
                        "values": [0.5, 1.2]}],   # 1.2 is supercritical
    }
    cfg = write_config(tmp_path, sweep)
    out = tmp_path / "out"
    code = main(["sweep", "--config", cfg, "--out", str(out), "--jobs", "1"])
    assert code == 0
    captured = capsys.readouterr()
    assert "point failed" in captured.err
    lines = read_csv_lines(out / "sweep.csv")
    assert len(lines) == 3
    assert lines[1].endswith(",ok")
    assert "error" in lines[2]


def test_sweep_two_parameters_cartesian(tmp_path):
    sweep = {
        "mode": "solve",
        "template": SOLVE_1D,
        "parameters": [
            {"path": "potential.params.beta", "values": [0.8, 0.9]},
            {"path": "potential.params.b", "values": [0.4, 0.5]},
        ],
    }
    cfg = write_config(tmp_path, sweep)
    out = tmp_path / "out"
    assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
    lines = read_csv_lines(out / "sweep.csv")
    assert len(lines) == 5
    assert lines[0].startswith("potential.params.beta,potential.params.b,")


# ---------------------------------------------------------------- catalog

def test_catalog_lists_families(tmp_path, capsys):
    assert main(["catalog", "--out", str(tmp_path)]) == 0
    text = capsys.readouterr().out
    for family in ("exponential", "coulomb", "hulthen", "osc_cubic"):
        assert family in text
    for cid in ("fig1", "sec5d"):
        assert cid in text
    doc = json.loads((tmp_path / "catalog.json").read_text())
    names = {f["name"] for f in doc["families"]}
    assert {"exponential", "coulomb", "tabulated"} <= names
    assert {c["id"] for c in doc["reference_cases"]} == \
        {"fig1", "sec3", "fig3", "sec5a", "sec5b", "sec5d"}


# ------------------------------------------------------------- exit codes

def test_exit_2_no_bound_state(tmp_path, capsys):
    doc = json.loads(json.dumps(SOLVE_1D))
    doc["potential"]["params"]["beta"] = 0.0
    cfg = write_config(tmp_path, doc)
    code = main(["solve", "--config", cfg, "--out", str(tmp_path / "out")])
    assert code == 2
    body = json.loads(capsys.readouterr().out)
    assert body["error"]["type"] == "NoBoundStateError"
    assert body["error"]["exit_code"] == 2


def test_exit_3_supercritical(tmp_path, capsys):
    doc = {
        "mass": 1.0,
        "geometry": {"kind": "radial", "d": 3, "j": 0.5, "tau": -1},
        "potential": {"family": "coulomb", "params": {"v": 1.2}},
    }
    cfg = write_config(tmp_path, doc)
    code = main(["solve", "--config", cfg, "--out", str(tmp_path / "out")])
    assert code == 3
    body = json.loads(capsys.readouterr().out)
    assert body["error"]["type"] == "SupercriticalCouplingError"


def test_exit_1_invalid_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    code = main(["solve", "--config", str(path),
                 "--out", str(tmp_path / "out")])
    assert code == 1
    body = json.loads(capsys.readouterr().out)
    assert "not valid JSON" in body["error"]["message"]


def test_exit_1_missing_section(tmp_path, capsys):
    cfg = write_config(tmp_path, {"mass": 1.0,
                                  "geometry": {"kind": "one_dim"}})
    code = main(["solve", "--config", cfg, "--out", str(tmp_path / "out")])
    assert code == 1
    assert "potential" in json.loads(capsys.readouterr().out)["error"]["message"]


def test_exit_1_bad_parameter_value(tmp_path, capsys):
    doc = json.loads(json.dumps(SOLVE_1D))
    doc["potential"]["params"]["b"] = -0.5
    cfg = write_config(tmp_path, doc)
    code = main(["solve", "--config", cfg, "--out", str(tmp_path / "out")])
    assert code == 1
    capsys.readouterr()


def test_exit_1_usage_errors(capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["compare", "--base", "c"]) == 1
    capsys.readouterr()
