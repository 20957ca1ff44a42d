import json
from importlib import resources

import jsonschema
import pytest

from pendulum_topology.cli import main

SCHEMA = json.loads(resources.files("pendulum_topology").joinpath("report_schema.json").read_text())
UNIT = ["--m1", "1", "--m2", "1", "--l1", "1", "--l2", "1", "--g", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


def test_analyze_m2(capsys):
    code, rep = run_json(capsys, "analyze", *UNIT, "--energy", "0")
    assert code == 0
    assert rep["slope"] == 2.0
    assert [c["index"] for c in rep["critical_points"]] == [0, 2, 2, 4]
    (r,) = rep["regimes"]
    assert r["tag"] == "M2" and r["betti"] == [1, 0, 1, 0, 0, 1, 0, 1]


def test_analyze_several_energies(capsys):
    code, rep = run_json(capsys, "analyze", "--energy", "-4", "--energy", "3.5", "--energy", "-1")
    assert [r["tag"] for r in rep["regimes"]] == ["Empty", "M4", "Critical"]
    m4 = rep["regimes"][1]["integer_homology"]
    assert m4[3] == {"rank": 0, "torsion": [4]}


def test_analyze_degenerate_exit_code(capsys):
    code, _ = run(capsys, "analyze", *UNIT[:6], "--l2", "2", "--g", "1", "--energy", "0")
    assert code == 3
    # without a regime split request there is nothing to refuse
    code, rep = run_json(capsys, "analyze", "--l2", "2")
    assert code == 0 and rep["degenerate"] is True


@pytest.mark.parametrize("argv", [["analyze", "--m1", "-1"], ["analyze", "--g", "0"],
                                  ["simulate", "--energy", "1"]])
def test_invalid_input_exit_code(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_obstructions(capsys):
    code, rep = run_json(capsys, "obstructions")
    got = {(o["surface"], o["criterion"]): o for o in rep["obstructions"]}
    m3 = got[("M3", "geodesic_flow")]
    assert (m3["lhs"], m3["rhs"], m3["verdict"]) == (4, 1, "ObstructionFound")
    m4 = got[("M4", "geodesic_flow")]
    assert m4["verdict"] == "NotApplicable"
    assert m4["conditions"][0]["lhs"] == [4]
    q = got[("Q", "integrability")]
    assert q["verdict"] == "NoObstruction" and q["lhs"] == [1, 0, 2, 0, 1]
    assert all(got[(s, "cross_section")]["verdict"] == "ObstructionFound"
               for s in ("M1", "M2", "M3", "M4"))


def test_verify_level0_with_offsets(capsys):
    code, rep = run_json(capsys, "verify", "--subdivision", "0", "--energy-offsets", "0", "0.5")
    assert code == 0 and rep["all_pass"]
    assert any("coarse" in n for n in rep["notes"])
    by_band = {}
    for row in rep["verify"]:
        by_band.setdefault(row["band"], set()).add(tuple(row["oracle_pair_ranks"]))
        assert row["trace"]
    # the oracle does not move within a band
    assert all(len(v) == 1 for v in by_band.values())


def test_simulate_and_csv(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code, rep = run_json(capsys, "simulate", "--energy", "0", "--steps", "500", "--seed", "42",
                         "--out", str(a))
    assert code == 0
    assert rep["diagnostics"]["regime"] == "M2"
    assert rep["diagnostics"]["max_residual"] <= 1e-9
    run(capsys, "simulate", "--energy", "0", "--steps", "500", "--seed", "42", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0].startswith("time,q1x,q1y,q1z")


def test_simulate_empty_exit_code(capsys):
    assert run(capsys, "simulate", "--energy", "-5")[0] == 4


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# unit pendulum, long upper arm\nm1 = 1\nl1 = 2\nenergy = 0, 100\nformat = json\n")
    code, rep = run_json(capsys, "analyze", "--config", str(cfg))
    assert rep["slope"] == 4.0 and [r["energy"] for r in rep["regimes"]] == [0.0, 100.0]
    code, rep = run_json(capsys, "analyze", "--config", str(cfg), "--l1", "1", "--energy", "2")
    assert rep["slope"] == 2.0 and [r["tag"] for r in rep["regimes"]] == ["M3"]


def test_config_file_errors(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "analyze", "--config", str(bad))[0] == 2
    assert run(capsys, "analyze", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_text_format_and_report_file(capsys, tmp_path):
    code, out = run(capsys, "analyze", "--energy", "0", "--format", "text")
    assert "M2" in out and "S^2 x S^5" in out
    dest = tmp_path / "rep.json"
    code, out = run(capsys, "obstructions", "--out", str(dest))
    assert out == ""
    jsonschema.validate(json.loads(dest.read_text()), SCHEMA)


def test_repeated_runs_identical(capsys):
    assert run(capsys, "obstructions")[1] == run(capsys, "obstructions")[1]
