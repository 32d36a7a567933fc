"""Test result models, run configuration and environment settings."""
from fractions import Fraction

import pytest
from pydantic import ValidationError

from spinlink.config import RunSettings, get_run_settings
from spinlink.linalg import EXACT, FLOAT
from spinlink.models import (
    AlgebraKind,
    CheckResult,
    Expected,
    GaugeSector,
    RunConfig,
    ScanGrid,
    ScanRow,
    Suite,
    VerificationReport,
    format_deviation,
)


def test_format_deviation():
    assert format_deviation(Fraction(3, 4)) == "3/4"
    assert format_deviation(0) == "0"
    assert format_deviation(1.5e-12) == "1.500000e-12"


def test_check_result_expectations():
    """Expected failures pass when the identity does not hold; records never count."""
    held = CheckResult.evaluate("a.held", "x = x", Fraction(0), EXACT)
    broken = CheckResult.evaluate("a.broken", "x = y", Fraction(1), EXACT)
    expected_fail = CheckResult.evaluate(
        "a.fail", "x != y", 0.5, FLOAT, tol=1e-9, expected=Expected.FAIL
    )
    record = CheckResult.evaluate(
        "a.record", "x ~ y", Fraction(2), EXACT, expected=Expected.RECORD
    )
    assert held.passed and held.metric == "frobenius_squared"
    assert not broken.passed
    assert expected_fail.passed and not expected_fail.holds
    assert expected_fail.metric == "frobenius"
    assert not record.counts


def test_report_sorts_and_counts():
    """Checks are sorted by id and counted by expectation."""
    checks = [
        CheckResult.evaluate("b.second", "", Fraction(1), EXACT),
        CheckResult.evaluate("a.first", "", Fraction(0), EXACT),
        CheckResult.evaluate(
            "c.third", "", Fraction(1), EXACT, expected=Expected.RECORD
        ),
    ]
    report = VerificationReport.build(
        AlgebraKind.QUATERNION, EXACT, 1, [Suite.AXIOMS], checks
    )
    assert [c.check_id for c in report.checks] == ["a.first", "b.second", "c.third"]
    assert (report.total, report.passed, report.failed, report.recorded) == (3, 1, 1, 1)
    assert not report.ok


def test_run_config_orders_suites():
    config = RunConfig(suites="duality, axioms,gamma")
    assert config.suites == [Suite.AXIOMS, Suite.GAMMA, Suite.DUALITY]


def test_run_config_rejects_bad_input():
    with pytest.raises(ValidationError):
        RunConfig(suites="")
    with pytest.raises(ValidationError):
        RunConfig(suites="axioms,bogus")
    with pytest.raises(ValidationError):
        RunConfig(algebra="octonion", suites="lagrangian")
    with pytest.raises(ValidationError):
        RunConfig(suites="axioms", tol=0)


def test_default_suites():
    assert Suite.LAGRANGIAN not in RunConfig.default_suites(AlgebraKind.OCTONION)
    assert RunConfig.default_suites(AlgebraKind.QUATERNION)[0] is Suite.AXIOMS


def test_scan_grid_parsing():
    grid = ScanGrid(t_l="0.5,-0.5", sectors="u1")
    assert grid.t_l == [0.5, -0.5]
    assert grid.sectors == [GaugeSector.U1]
    assert grid.y_r == [-1.0, 1.0]
    with pytest.raises(ValidationError):
        ScanGrid(m="nan")
    with pytest.raises(ValidationError):
        ScanGrid(sectors="weak")


def test_scan_row_aliases():
    row = ScanRow(
        t_l=0.5, t_r=-0.5, y_l=-1, y_r=-1, m=0.5, sector="su2", max_abs_variation=0.0
    )
    dumped = row.model_dump(mode="json", by_alias=True)
    assert dumped["tL"] == 0.5
    assert dumped["sector"] == "su2"


def test_settings_defaults(monkeypatch):
    """Unset environment gives the documented defaults."""
    for name in ("SPINLINK_SEED", "SPINLINK_ALGEBRA", "SPINLINK_MODE"):
        monkeypatch.delenv(name, raising=False)
    settings = RunSettings(_env_file=None)
    assert settings.seed == 1729
    assert settings.algebra == "quaternion"
    assert settings.tol == 1e-9


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("SPINLINK_SEED", "42")
    monkeypatch.setenv("SPINLINK_ALGEBRA", "octonion")
    settings = get_run_settings()
    assert settings.seed == 42
    assert settings.algebra == "octonion"
    monkeypatch.setenv("SPINLINK_MODE", "symbolic")
    with pytest.raises(ValidationError):
        get_run_settings()
