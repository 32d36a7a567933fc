"""Suite registry and the verification run behind the `verify` command."""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Optional

from spinlink.algebra import (
    StructureTable,
    check_algebra_structure,
    check_axiom_suite,
    ensure_certified,
    load_table,
)
from spinlink.crossprod import (
    verify_chi_properties,
    verify_cross_properties,
    verify_duality,
    verify_sides_agree,
)
from spinlink.errors import AlgebraMismatchError
from spinlink.generators import (
    GeneratorSet,
    verify_gamma_identities,
    verify_sigma_identities,
)
from spinlink.lagrangian import run_lagrangian_checks
from spinlink.linalg import EXACT
from spinlink.models import CheckResult, RunConfig, Side, Suite, VerificationReport
from spinlink.transforms import run_transform_checks

logger = logging.getLogger(__name__)


def load_convention(config: RunConfig) -> StructureTable:
    """The structure table of a run: the default one or a certified custom file."""
    table: Optional[StructureTable] = None
    if config.convention_file is not None:
        table = load_table(config.convention_file)
        if table.kind is not config.algebra:
            raise AlgebraMismatchError(
                f"{config.convention_file} describes the {table.kind.value} algebra, "
                f"not the {config.algebra.value} algebra"
            )
    return ensure_certified(
        table, config.algebra, samples=config.random_samples, seed=config.seed
    )


@dataclass
class SuiteContext:
    """Shared inputs of one run; generator sets are built once on demand."""

    config: RunConfig
    table: StructureTable

    @cached_property
    def exact_generators(self) -> GeneratorSet:
        return GeneratorSet.build(self.table, EXACT)

    @cached_property
    def float_generators(self) -> GeneratorSet:
        return self.exact_generators.to_float()

    @property
    def generators(self) -> GeneratorSet:
        if self.config.mode is EXACT:
            return self.exact_generators
        return self.float_generators


def run_axioms(ctx: SuiteContext) -> List[CheckResult]:
    cfg = ctx.config
    args = dict(samples=cfg.random_samples, seed=cfg.seed, mode=cfg.mode, tol=cfg.tol)
    return check_axiom_suite(ctx.table, **args) + check_algebra_structure(
        ctx.table, **args
    )


def run_gamma(ctx: SuiteContext) -> List[CheckResult]:
    return verify_gamma_identities(ctx.generators, ctx.config.tol)


def run_sigma(ctx: SuiteContext) -> List[CheckResult]:
    return verify_sigma_identities(ctx.generators, ctx.config.tol)


def run_transforms(ctx: SuiteContext) -> List[CheckResult]:
    cfg = ctx.config
    return run_transform_checks(
        ctx.float_generators,
        seed=cfg.seed,
        count=cfg.transform_seeds,
        cap=cfg.theta_cap,
        tol=cfg.tol,
    )


def run_lagrangian(ctx: SuiteContext) -> List[CheckResult]:
    cfg = ctx.config
    return run_lagrangian_checks(
        ctx.exact_generators, seed=cfg.seed, points=cfg.lagrangian_points, tol=cfg.tol
    )


def run_cross(ctx: SuiteContext) -> List[CheckResult]:
    cfg = ctx.config
    results: List[CheckResult] = []
    for side in (Side.L, Side.R):
        results.extend(
            verify_cross_properties(
                side,
                ctx.table,
                samples=cfg.random_samples,
                seed=cfg.seed,
                mode=cfg.mode,
                tol=cfg.tol,
            )
        )
    results.append(verify_sides_agree(ctx.table, mode=cfg.mode, tol=cfg.tol))
    results.extend(verify_chi_properties(ctx.table))
    return results


def run_duality(ctx: SuiteContext) -> List[CheckResult]:
    _, results = verify_duality(ctx.table)
    return results


SUITE_RUNNERS: Dict[Suite, Callable[[SuiteContext], List[CheckResult]]] = {
    Suite.AXIOMS: run_axioms,
    Suite.GAMMA: run_gamma,
    Suite.SIGMA: run_sigma,
    Suite.TRANSFORMS: run_transforms,
    Suite.LAGRANGIAN: run_lagrangian,
    Suite.CROSS: run_cross,
    Suite.DUALITY: run_duality,
}


def run_verification(
    config: RunConfig, table: Optional[StructureTable] = None
) -> VerificationReport:
    """Run the configured suites in order and assemble the sorted report."""
    table = table or load_convention(config)
    ctx = SuiteContext(config=config, table=table)
    checks: List[CheckResult] = []
    for suite in config.suites:
        logger.info(f"Running suite {suite.value} on the {table.kind.value} algebra")
        results = SUITE_RUNNERS[suite](ctx)
        failed = [r.check_id for r in results if r.counts and not r.passed]
        if failed:
            logger.warning(f"Suite {suite.value}: {len(failed)} checks failed")
        checks.extend(results)
    return VerificationReport.build(
        algebra=config.algebra,
        mode=config.mode,
        seed=config.seed,
        suites=config.suites,
        checks=checks,
    )
