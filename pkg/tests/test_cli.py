import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from zddcolor.cli import CSV_FIELDS, EXIT_ERROR, EXIT_LIMIT, EXIT_OPTIMAL, RunConfig, RunReport, batch, main, run, schema
from zddcolor.graph import complete_graph, cycle_graph, myciel, to_dimacs


@pytest.fixture
def instances(tmp_path):
    (tmp_path / "myciel3.col").write_text(to_dimacs(myciel(3)))
    (tmp_path / "k3.col").write_text(to_dimacs(complete_graph(3)))
    (tmp_path / "c5.col").write_text(to_dimacs(cycle_graph(5)))
    return tmp_path


def test_solve_text(instances, capsys):
    assert main(["solve", str(instances / "myciel3.col")]) == EXIT_OPTIMAL
    out = capsys.readouterr().out
    assert "myciel3: n=11 m=20 chi = 4" in out


def test_solve_dfs_root_solved(instances, capsys):
    assert main(["solve", str(instances / "k3.col"), "--strategy", "dfs", "--format", "json"]) == EXIT_OPTIMAL
    rep = json.loads(capsys.readouterr().out)
    assert rep["UB"] == 3 and rep["exp"] == 0


def test_json_validates_against_schema(instances, capsys):
    main(["solve", str(instances / "myciel3.col"), "--format", "json"])
    rep = json.loads(capsys.readouterr().out)
    jsonschema.validate(rep, schema())
    assert rep["UB"] == 4 and rep["optimal"] is True


def test_json_round_trip_and_growth(instances):
    rep = run(RunConfig(instances / "myciel3.col"))
    text = rep.to_json()
    assert RunReport.from_json(text).to_json() == text
    assert rep.pct_change == pytest.approx(100.0 * (rep.Z_f - rep.Z_i) / rep.Z_i, abs=1e-4)


def test_no_times_reports_are_byte_identical(instances):
    cfg = RunConfig(instances / "myciel3.col", seed=5, no_times=True)
    assert run(cfg).to_json() == run(cfg).to_json()
    assert run(cfg).t is None


def test_output_file(instances, tmp_path):
    out = tmp_path / "report.json"
    assert main(["solve", str(instances / "c5.col"), "--format", "json", "--output", str(out)]) == EXIT_OPTIMAL
    assert json.loads(out.read_text())["UB"] == 3


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 9\n")
    assert main(["solve", str(bad)]) == EXIT_ERROR
    assert "out of range" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.col")]) == EXIT_ERROR


def test_limit_exit_code(tmp_path, capsys):
    path = tmp_path / "m4.col"
    path.write_text(to_dimacs(myciel(4)))
    assert main(["solve", str(path), "--zdd-budget", "10", "--format", "json"]) == EXIT_LIMIT
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "zdd_budget" and rep["LB"] <= rep["UB"]


def test_env_override(instances, capsys, monkeypatch):
    monkeypatch.setenv("ZDDCOLOR_FORMAT", "json")
    monkeypatch.setenv("ZDDCOLOR_STRATEGY", "bfs")
    assert main(["solve", str(instances / "c5.col")]) == EXIT_OPTIMAL
    assert json.loads(capsys.readouterr().out)["UB"] == 3
    # explicit flags still win
    assert main(["solve", str(instances / "c5.col"), "--format", "text"]) == EXIT_OPTIMAL
    assert "chi = 3" in capsys.readouterr().out


def test_invalid_limit(instances):
    assert main(["solve", str(instances / "c5.col"), "--time-limit", "-1"]) == EXIT_ERROR


def rows(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def test_batch_three_instances(instances):
    text, reports = batch(instances, RunConfig(instances))
    assert text.splitlines()[0].split(",") == CSV_FIELDS
    got = {r["instance"]: r for r in rows(text)}
    assert set(got) == {"myciel3", "k3", "c5"}
    assert got["myciel3"]["UB"] == "4" and got["k3"]["UB"] == "3" and got["c5"]["UB"] == "3"
    assert all(r is not None and r.optimal for r in reports)


def test_batch_empty_directory(tmp_path):
    text, reports = batch(tmp_path, RunConfig(tmp_path))
    assert text == ",".join(CSV_FIELDS) + "\n"
    assert reports == []


def test_batch_isolates_errors(instances, capsys):
    (instances / "broken.col").write_text("not a graph\n")
    assert main(["batch", str(instances)]) == EXIT_ERROR
    got = {r["instance"]: r for r in rows(capsys.readouterr().out)}
    assert got["broken"]["status"] == "error" and got["broken"]["error"]
    assert got["myciel3"]["UB"] == "4"


def test_module_entry_point(instances):
    proc = subprocess.run(
        [sys.executable, "-m", "zddcolor", "solve", str(instances / "k3.col"), "--no-times", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["UB"] == 3
