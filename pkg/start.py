#!/usr/bin/env python3
"""
Spinlink - Full Verification Run

Runs every suite on both algebras and writes one JSON report per algebra:
- quaternion: axioms, gamma, sigma, transforms, lagrangian, cross, duality
- octonion: every suite except the lagrangian
"""

import logging
import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))


def setup_logging():
    """Log to stderr and to logs/spinlink.log."""
    Path('logs').mkdir(exist_ok=True)

    handlers = [
        logging.StreamHandler(sys.stderr),
        logging.FileHandler('logs/spinlink.log', encoding='utf-8'),
    ]

    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True
    )


setup_logging()

logger = logging.getLogger(__name__)


def check_environment():
    """Load .env if present so SPINLINK_* defaults apply."""
    if not Path('.env').exists():
        logger.info(".env file not found. Using built-in defaults and the environment.")
        return
    from dotenv import load_dotenv
    load_dotenv()
    logger.info("Found .env file, loaded SPINLINK_* settings")


def verify_algebra(kind, out_dir):
    """Run all suites for one algebra; True when every counted check passes."""
    from spinlink.config import get_run_settings
    from spinlink.models import AlgebraKind, RunConfig
    from spinlink.suites import run_verification

    settings = get_run_settings()
    algebra = AlgebraKind(kind)
    config = RunConfig(
        algebra=algebra,
        mode=settings.mode,
        tol=settings.tol,
        seed=settings.seed,
        suites=RunConfig.default_suites(algebra),
        random_samples=settings.random_samples,
        transform_seeds=settings.transform_seeds,
        lagrangian_points=settings.lagrangian_points,
        theta_cap=settings.theta_cap,
    )
    report = run_verification(config)
    path = out_dir / f"{kind}.json"
    path.write_text(report.model_dump_json(indent=2) + "\n", encoding='utf-8')
    logger.info(
        f"{kind}: {report.passed} passed, {report.failed} failed, "
        f"{report.recorded} recorded -> {path}"
    )
    return report.ok


def main():
    """Verify both algebras."""
    logger.info("Starting spinlink verification...")
    check_environment()
    out_dir = Path('reports')
    out_dir.mkdir(exist_ok=True)

    results = {}
    for step, kind in enumerate(("quaternion", "octonion"), start=1):
        logger.info(f"Step {step}/2: {kind} algebra")
        try:
            results[kind] = verify_algebra(kind, out_dir)
        except Exception as e:
            logger.error(f"Verification of {kind} failed: {e}", exc_info=True)
            results[kind] = False

    logger.info("=" * 50)
    for kind, ok in results.items():
        logger.info(f"- {kind}: {'OK' if ok else 'FAILED'}")
    logger.info("=" * 50)
    return 0 if all(results.values()) else 1


def run():
    """Run the verification with proper error handling."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Verification interrupted by user")
        sys.exit(130)


if __name__ == "__main__":
    run()
