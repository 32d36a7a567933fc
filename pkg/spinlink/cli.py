"""Command line: verify, duality, gauge-scan and dump."""
import json
import logging
import sys
from enum import Enum as PyEnum
from pathlib import Path
from typing import Any, Dict, NoReturn, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from spinlink.config import RunSettings, get_run_settings
from spinlink.crossprod import build_chi, verify_duality
from spinlink.errors import AlgebraMismatchError, SpinlinkError
from spinlink.generators import GeneratorSet
from spinlink.lagrangian import build_projectors, charge_constraint_scan
from spinlink.linalg import EXACT
from spinlink.models import (
    AlgebraKind,
    RunConfig,
    ScanGrid,
    Side,
    Suite,
    VerificationReport,
)
from spinlink.suites import load_convention, run_verification

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Exact verification of complexified quaternion and octonion identities"
)
console = Console(stderr=True)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

ALGEBRA_OPTION = typer.Option(None, "--algebra", help="quaternion or octonion")
MODE_OPTION = typer.Option(None, "--mode", help="exact or float arithmetic")
TOL_OPTION = typer.Option(None, "--tol", help="Tolerance for float comparisons")
SEED_OPTION = typer.Option(None, "--seed", help="Seed (falls back to SPINLINK_SEED)")
SUITES_OPTION = typer.Option(
    None,
    "--suites",
    help=f"Comma-separated subset of {', '.join(s.value for s in Suite)}",
)
CONVENTION_OPTION = typer.Option(
    None, "--convention", help="Structure table file: one 'I J K sign' line per triple"
)
OUT_OPTION = typer.Option(None, "--out", help="Write the JSON report here, not stdout")


class DumpTarget(str, PyEnum):
    GAMMA = "gamma"
    SIGMA = "sigma"
    SIGMA_V = "sigmaV"
    ETA = "eta"
    PROJECTORS = "projectors"
    CHI = "chi"


def setup_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _fail(message: str) -> NoReturn:
    logger.error(message)
    console.print(f"[bold red]error:[/bold red] {message}")
    raise typer.Exit(code=EXIT_CONFIG)


def _settings() -> RunSettings:
    try:
        return get_run_settings()
    except ValidationError as e:
        _fail(f"Invalid SPINLINK_* environment: {e}")


def _build_config(
    algebra: Optional[str],
    mode: Optional[str],
    tol: Optional[float],
    seed: Optional[int],
    suites: Optional[str],
    convention: Optional[Path],
) -> RunConfig:
    """Merge command-line flags over the environment defaults."""
    settings = _settings()
    kind = algebra or settings.algebra
    if suites is None:
        suites = settings.suites or ",".join(
            s.value for s in RunConfig.default_suites(AlgebraKind(kind))
        )
    return RunConfig(
        algebra=kind,
        mode=mode or settings.mode,
        tol=settings.tol if tol is None else tol,
        seed=settings.seed if seed is None else seed,
        convention_file=convention,
        suites=suites,
        random_samples=settings.random_samples,
        transform_seeds=settings.transform_seeds,
        lagrangian_points=settings.lagrangian_points,
        theta_cap=settings.theta_cap,
    )


def _emit(payload: Any, out: Optional[Path]) -> None:
    """Deterministic JSON to stdout or a file."""
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out is None:
        typer.echo(text)
        return
    try:
        out.write_text(text + "\n", encoding="utf-8")
    except OSError as e:
        _fail(f"Cannot write {out}: {e}")
    logger.info(f"Report written to {out}")


def _print_summary(report: VerificationReport) -> None:
    table = Table(title=f"{report.algebra.value} / {report.mode.value}")
    table.add_column("Suite")
    table.add_column("Passed", justify="right")
    table.add_column("Failed", justify="right")
    table.add_column("Recorded", justify="right")
    groups: Dict[str, list] = {}
    for check in report.checks:
        groups.setdefault(check.check_id.split(".")[0], []).append(check)
    for name, checks in groups.items():
        counted = [c for c in checks if c.counts]
        failed = sum(1 for c in counted if not c.passed)
        table.add_row(
            name,
            str(len(counted) - failed),
            str(failed),
            str(len(checks) - len(counted)),
        )
    console.print(table)
    for check in report.checks:
        if check.counts and not check.passed:
            console.print(f"[red]FAIL[/red] {check.check_id}: {check.reference}")
    status = "[green]OK[/green]" if report.ok else "[red]FAILED[/red]"
    console.print(f"{status} {report.passed}/{report.passed + report.failed} checks")


@app.callback()
def main_callback(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="stderr level"),
) -> None:
    setup_logging(log_level or _settings().log_level)


@app.command()
def verify(
    algebra: Optional[str] = ALGEBRA_OPTION,
    mode: Optional[str] = MODE_OPTION,
    tol: Optional[float] = TOL_OPTION,
    seed: Optional[int] = SEED_OPTION,
    suites: Optional[str] = SUITES_OPTION,
    convention: Optional[Path] = CONVENTION_OPTION,
    out: Optional[Path] = OUT_OPTION,
) -> None:
    """Run verification suites and emit a JSON report."""
    try:
        config = _build_config(algebra, mode, tol, seed, suites, convention)
        table = load_convention(config)
    except (ValidationError, SpinlinkError, ValueError) as e:
        _fail(f"Invalid configuration: {e}")
    report = run_verification(config, table)
    _emit(report.model_dump(mode="json"), out)
    _print_summary(report)
    raise typer.Exit(code=EXIT_OK if report.ok else EXIT_FAILED)


@app.command()
def duality(
    algebra: Optional[str] = ALGEBRA_OPTION,
    seed: Optional[int] = SEED_OPTION,
    convention: Optional[Path] = CONVENTION_OPTION,
    out: Optional[Path] = OUT_OPTION,
) -> None:
    """Self-duality spectra of both sides, always in exact arithmetic."""
    try:
        config = _build_config(algebra, "exact", None, seed, "duality", convention)
        table = load_convention(config)
    except (ValidationError, SpinlinkError, ValueError) as e:
        _fail(f"Invalid configuration: {e}")
    reports, checks = verify_duality(table)
    _emit(
        {
            "algebra": table.kind.value,
            "sides": [r.model_dump(mode="json") for r in reports],
            "checks": [c.model_dump(mode="json") for c in checks],
        },
        out,
    )
    for r in reports:
        console.print(
            f"{r.side.value}: eigenvalues {', '.join(r.eigenvalues)} "
            f"with multiplicities {r.multiplicities}"
        )
    ok = all(c.passed for c in checks if c.counts)
    raise typer.Exit(code=EXIT_OK if ok else EXIT_FAILED)


@app.command("gauge-scan")
def gauge_scan(
    t_l: Optional[str] = typer.Option(None, "--tl", help="Comma-separated t_L values"),
    t_r: Optional[str] = typer.Option(None, "--tr", help="Comma-separated t_R values"),
    y_l: Optional[str] = typer.Option(None, "--yl", help="Comma-separated y_L values"),
    y_r: Optional[str] = typer.Option(None, "--yr", help="Comma-separated y_R values"),
    masses: Optional[str] = typer.Option(None, "--m", help="Comma-separated masses"),
    sectors: Optional[str] = typer.Option(None, "--sectors", help="su2,u1,lorentz"),
    points: int = typer.Option(5, "--points", min=1, help="Points per assignment"),
    seed: Optional[int] = SEED_OPTION,
    out: Optional[Path] = OUT_OPTION,
) -> None:
    """Mass-term gauge variation over a grid of charges (quaternion sector)."""
    given = {"t_l": t_l, "t_r": t_r, "y_l": y_l, "y_r": y_r, "m": masses}
    given["sectors"] = sectors
    try:
        grid = ScanGrid(**{k: v for k, v in given.items() if v is not None})
    except (ValidationError, ValueError) as e:
        _fail(f"Malformed scan grid: {e}")
    seed = _settings().seed if seed is None else seed
    rows = charge_constraint_scan(grid, seed=seed, points=points)
    _emit(
        {
            "seed": seed,
            "points": points,
            "rows": [r.model_dump(mode="json", by_alias=True) for r in rows],
        },
        out,
    )
    invariant = sum(1 for r in rows if r.max_abs_variation <= 1e-10)
    console.print(f"{invariant}/{len(rows)} assignments leave the mass term invariant")


def _matrix_map(matrices) -> Dict[str, Any]:
    return {f"{a}{b}": m.to_strings() for (a, b), m in matrices.items()}


@app.command()
def dump(
    target: DumpTarget = typer.Argument(..., help="Object to serialize"),
    algebra: Optional[str] = ALGEBRA_OPTION,
    convention: Optional[Path] = CONVENTION_OPTION,
    out: Optional[Path] = OUT_OPTION,
) -> None:
    """Exact-entry JSON of generators, the metric, projectors or chi."""
    try:
        config = _build_config(algebra, "exact", None, None, "gamma", convention)
        table = load_convention(config)
        gs = GeneratorSet.build(table, EXACT)
        if target is DumpTarget.GAMMA:
            payload: Any = {
                s.value: [m.to_strings() for m in gs.gamma[s]] for s in (Side.L, Side.R)
            }
        elif target is DumpTarget.SIGMA:
            payload = {s.value: _matrix_map(gs.sigma[s]) for s in (Side.L, Side.R)}
        elif target is DumpTarget.SIGMA_V:
            payload = _matrix_map(gs.sigma[Side.V])
        elif target is DumpTarget.ETA:
            payload = gs.eta.matrix.to_strings()
        elif target is DumpTarget.PROJECTORS:
            ps = build_projectors(gs)
            payload = {
                f"{side.value}_{label}": p.to_strings() for side, label, p in ps.items()
            }
        else:
            payload = {
                side.value: [
                    {"index": list(idx), "value": str(value)}
                    for idx, value in build_chi(side, table).nonzero()
                ]
                for side in (Side.L, Side.R)
            }
    except AlgebraMismatchError as e:
        _fail(f"{target.value} is not available here: {e}")
    except (ValidationError, SpinlinkError, ValueError) as e:
        _fail(f"Invalid configuration: {e}")
    _emit({"algebra": table.kind.value, "object": target.value, "data": payload}, out)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
