"""Test the command-line interface."""
import json

import pytest
from typer.testing import CliRunner

from spinlink.algebra import octonion_table
from spinlink.cli import EXIT_CONFIG, EXIT_OK, app


@pytest.fixture
def runner(monkeypatch):
    """CLI runner with a clean SPINLINK_* environment."""
    for name in ("ALGEBRA", "MODE", "SUITES", "SEED"):
        monkeypatch.delenv(f"SPINLINK_{name}", raising=False)
    return CliRunner()


@pytest.fixture
def report_path(tmp_path):
    return tmp_path / "report.json"


def _load(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_verify_quaternion_suites(runner, report_path):
    """A passing run exits 0 and writes a sorted report."""
    result = runner.invoke(
        app, ["verify", "--suites", "axioms,gamma,sigma", "--out", str(report_path)]
    )
    assert result.exit_code == EXIT_OK
    report = _load(report_path)
    assert report["ok"] is True
    assert report["algebra"] == "quaternion"
    assert report["suites"] == ["axioms", "gamma", "sigma"]
    ids = [c["check_id"] for c in report["checks"]]
    assert ids == sorted(ids)
    assert report["failed"] == 0


def test_verify_is_deterministic(runner, tmp_path):
    """Equal seeds give byte-identical reports."""
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--algebra", "octonion", "--suites", "axioms", "--seed", "3"]
    assert runner.invoke(app, args + ["--out", str(first)]).exit_code == EXIT_OK
    assert runner.invoke(app, args + ["--out", str(second)]).exit_code == EXIT_OK
    assert first.read_text() == second.read_text()


@pytest.mark.parametrize(
    "args",
    [
        ["--suites", ""],
        ["--suites", "axioms,bogus"],
        ["--algebra", "sedenion"],
        ["--algebra", "octonion", "--suites", "lagrangian"],
        ["--mode", "symbolic", "--suites", "axioms"],
    ],
)
def test_verify_rejects_bad_configuration(runner, args):
    result = runner.invoke(app, ["verify"] + args)
    assert result.exit_code == EXIT_CONFIG


def test_verify_with_convention_file(runner, tmp_path, report_path):
    """A valid custom table is certified and used."""
    table = tmp_path / "quaternions.txt"
    table.write_text("# e1 e2 = e3\n1 2 3 +1\n", encoding="utf-8")
    result = runner.invoke(
        app,
        [
            "verify",
            "--convention",
            str(table),
            "--suites",
            "axioms",
            "--out",
            str(report_path),
        ],
    )
    assert result.exit_code == EXIT_OK
    assert _load(report_path)["ok"] is True


def test_verify_rejects_broken_convention(runner, tmp_path):
    """A table failing the axioms is a configuration error."""
    text = octonion_table().to_text().replace("1 2 3 +1", "1 2 3 -1")
    table = tmp_path / "broken.txt"
    table.write_text(text, encoding="utf-8")
    args = ["verify", "--algebra", "octonion", "--convention", str(table)]
    result = runner.invoke(app, args + ["--suites", "axioms"])
    assert result.exit_code == EXIT_CONFIG


def test_verify_rejects_mismatched_convention(runner, tmp_path):
    table = tmp_path / "octonions.txt"
    table.write_text(octonion_table().to_text(), encoding="utf-8")
    result = runner.invoke(
        app, ["verify", "--convention", str(table), "--suites", "axioms"]
    )
    assert result.exit_code == EXIT_CONFIG


def test_duality_command(runner, report_path):
    result = runner.invoke(app, ["duality", "--out", str(report_path)])
    assert result.exit_code == EXIT_OK
    payload = _load(report_path)
    assert payload["algebra"] == "quaternion"
    assert [side["multiplicities"] for side in payload["sides"]] == [[3, 3], [3, 3]]


def test_dump_eta(runner, report_path):
    result = runner.invoke(app, ["dump", "eta", "--out", str(report_path)])
    assert result.exit_code == EXIT_OK
    payload = _load(report_path)
    assert payload["object"] == "eta"
    assert payload["data"][0][0] == "-1+0 i"
    assert payload["data"][1][1] == "1+0 i"


def test_dump_octonion_gamma(runner, report_path):
    result = runner.invoke(
        app, ["dump", "gamma", "--algebra", "octonion", "--out", str(report_path)]
    )
    assert result.exit_code == EXIT_OK
    data = _load(report_path)["data"]
    assert len(data["L"]) == 8
    assert len(data["R"][0]) == 8


def test_dump_projectors_needs_quaternions(runner):
    result = runner.invoke(app, ["dump", "projectors", "--algebra", "octonion"])
    assert result.exit_code == EXIT_CONFIG


def test_gauge_scan(runner, report_path):
    """The physical charge assignment leaves the mass term invariant."""
    result = runner.invoke(
        app,
        [
            "gauge-scan",
            "--tl=0.5",
            "--tr=-0.5",
            "--yl=-1",
            "--yr=-1",
            "--m=0.5",
            "--sectors=su2,u1",
            "--points=2",
            "--out",
            str(report_path),
        ],
    )
    assert result.exit_code == EXIT_OK
    rows = _load(report_path)["rows"]
    assert len(rows) == 2
    assert {row["sector"] for row in rows} == {"su2", "u1"}
    assert all(row["tL"] == 0.5 for row in rows)
    assert all(row["max_abs_variation"] < 1e-10 for row in rows)


def test_gauge_scan_rejects_malformed_grid(runner):
    result = runner.invoke(app, ["gauge-scan", "--m=abc"])
    assert result.exit_code == EXIT_CONFIG
