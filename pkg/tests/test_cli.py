"""End-to-end runs of the command line through main(argv); every command
prints one JSON report, exit code 0 means every inequality step held."""

import json

import pytest

from extremal_radii.cli import main

TOP_KEYS = {"schema", "command", "params", "steps", "claims", "artifacts",
            "overall"}


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


def test_audit_default(capsys):
    code, payload = run_json(capsys, "audit", "--gamma", "1.7")
    assert code == 1  # one inequality honestly fails
    assert TOP_KEYS <= payload.keys()
    assert payload["schema"] == 1
    assert payload["command"] == "audit"
    assert payload["overall"] == "does-not-close"
    assert len(payload["steps"]) == 5
    assert len(payload["claims"]) == 18
    failing = [s["name"] for s in payload["steps"] if not s["holds"]]
    assert failing == ["case_b"]


def test_audit_json_artifact_matches_stdout(tmp_path, capsys):
    target = tmp_path / "audit.json"
    code, out, _ = run(capsys, "audit", "--json", str(target))
    assert code == 1
    assert target.read_text() == out
    assert str(target) in json.loads(out)["artifacts"]


def test_audit_skip_step(capsys):
    code, payload = run_json(capsys, "audit", "--skip-step", "case_b")
    assert code == 0
    assert payload["overall"] == "closes"
    assert all(s["name"] != "case_b" for s in payload["steps"])


def test_audit_tolerance_override(capsys):
    code, payload = run_json(capsys, "audit", "--tol", "p0=1e-6")
    assert code == 1
    p0 = next(c for c in payload["claims"] if c["id"] == "p0")
    assert p0["verdict"] == "refuted"
    assert p0["abs_tolerance"] == 1e-6


def test_audit_rejects_bad_gamma(capsys):
    code, out, err = run(capsys, "audit", "--gamma", "3.2")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_claims_registry_serializes_missing_values_as_null(capsys):
    code, payload = run_json(capsys, "claims")
    assert code == 0
    x2 = next(c for c in payload["claims"] if c["id"] == "x2")
    assert x2["computed"] is None
    assert x2["verdict"] == "refuted"


def test_claims_off_registry_gamma_keeps_shape_claims(capsys):
    code, payload = run_json(capsys, "claims", "--gamma", "2.0")
    assert code == 0
    assert len(payload["claims"]) == 9


def test_frontier_window(capsys):
    code, payload = run_json(capsys, "frontier", "--lo", "1.68",
                             "--hi", "1.70", "--step", "0.01")
    assert code == 1
    assert len(payload["steps"]) == 3
    assert payload["largest_closing"] is None
    assert payload["overall"] == "does-not-close"


def test_scan_psi(tmp_path, capsys):
    csv = tmp_path / "psi.csv"
    code, payload = run_json(capsys, "scan-psi", "--points", "5000",
                             "--csv", str(csv))
    assert code == 0
    assert len(payload["claims"]) == 9
    extremum = payload["steps"][0]
    assert extremum["name"] == "extremum_0"
    assert abs(extremum["output"] - 0.8868810479644157) < 1e-6
    assert len(csv.read_text().splitlines()) == 5000


def test_sample_is_deterministic(capsys):
    argv = ("sample", "--gamma", "1.7", "--iters", "800", "--seed", "7",
            "--restarts", "2")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    names = [s["name"] for s in payload["steps"]]
    assert names == ["feasible", "value", "dominates_symmetric",
                     "below_i0", "kuzmina"]
    assert payload["overall"] == "closes"
    assert set(payload["configuration"]) == {"p", "satellites"}


def test_sample_config_file(tmp_path, capsys):
    code, payload = run_json(capsys, "sample", "--iters", "200",
                             "--seed", "0", "--restarts", "1")
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"configuration": payload["configuration"]}))
    code, replay = run_json(capsys, "sample", "--config", str(path))
    assert code == 0
    names = [s["name"] for s in replay["steps"]]
    assert "dominates_symmetric" not in names
    assert replay["configuration"] == payload["configuration"]


def test_sample_infeasible_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"configuration": {
        "p": 0.9, "satellites": [[0.0, 0.5], [2.0, 0.5], [4.0, 0.5]]}}))
    code, payload = run_json(capsys, "sample", "--config", str(path))
    assert code == 1
    feasible = payload["steps"][0]
    assert feasible["name"] == "feasible"
    assert feasible["holds"] is False
    assert "overlap" in feasible["error"]


@pytest.mark.parametrize("content", ["{not json", "{}",
                                     '{"configuration": {"p": 0.5}}'])
def test_sample_unreadable_config_is_a_usage_error(tmp_path, capsys, content):
    path = tmp_path / "cfg.json"
    path.write_text(content)
    code, out, err = run(capsys, "sample", "--config", str(path))
    assert code == 2
    assert err.startswith("error:")


def test_plot_qd(tmp_path, capsys):
    svg = tmp_path / "field.svg"
    code, payload = run_json(capsys, "plot-qd", "--svg", str(svg),
                             "--max-arclength", "2.0")
    assert code == 0
    assert len(payload["steps"]) == 8
    for step in payload["steps"]:
        assert step["holds"]
        assert step["output"] < 1e-4
    assert str(svg) in payload["artifacts"]
    assert svg.read_text().startswith("<svg")


def test_plot_qd_csv_series(tmp_path, capsys):
    prefix = tmp_path / "traj"
    code, payload = run_json(capsys, "plot-qd", "--svg",
                             str(tmp_path / "f.svg"), "--csv-prefix",
                             str(prefix), "--max-arclength", "1.0")
    assert code == 0
    written = sorted(p.name for p in tmp_path.glob("traj_*.csv"))
    assert written == [f"traj_{k:02d}.csv" for k in range(8)]


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["audit", "--no-such-flag"]) == 2
    assert main(["frontier", "--lo", "1.7", "--hi", "1.5"]) == 2
    capsys.readouterr()
