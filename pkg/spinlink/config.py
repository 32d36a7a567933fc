"""Run configuration."""
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings


class RunSettings(BaseSettings):
    """Defaults for verification runs, overridable from the environment."""

    algebra: Literal["quaternion", "octonion"] = Field(
        default="quaternion",
        description="Composition algebra to verify"
    )
    mode: Literal["exact", "float"] = Field(
        default="exact",
        description="Scalar arithmetic for the identity suites"
    )
    tol: float = Field(
        default=1e-9,
        description="Tolerance for float-mode comparisons"
    )
    seed: int = Field(
        default=1729,
        description="Seed for every random sample drawn during a run"
    )
    suites: str = Field(
        default="",
        description="Comma-separated suite names; empty selects all suites"
    )

    # Sample sizes
    random_samples: int = Field(
        default=100,
        description="Random algebra elements per identity"
    )
    transform_seeds: int = Field(
        default=20,
        description="Random Lorentz parameter sets in the transform suite"
    )
    lagrangian_points: int = Field(
        default=100,
        description="Evaluation points in [-1, 1]^4 for the Lagrangian suite"
    )
    theta_cap: float = Field(
        default=2.0,
        description="Upper bound on |theta_ab| for random Lorentz parameters"
    )

    log_level: str = Field(
        default="WARNING",
        description="Logging level for stderr diagnostics"
    )

    model_config = {
        "env_file": ".env",
        "env_prefix": "SPINLINK_",
        "extra": "ignore"
    }


def get_run_settings() -> RunSettings:
    """Get run settings."""
    return RunSettings()
