"""Enumerations and pydantic models shared by the verification suites."""
from enum import Enum as PyEnum
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator


class AlgebraKind(PyEnum):
    """Composition algebra under study."""
    QUATERNION = "quaternion"
    OCTONION = "octonion"

    @property
    def dim(self) -> int:
        return 4 if self is AlgebraKind.QUATERNION else 8

    @classmethod
    def from_dim(cls, dim: int) -> "AlgebraKind":
        if dim == 4:
            return cls.QUATERNION
        if dim == 8:
            return cls.OCTONION
        raise ValueError(f"No composition algebra of dimension {dim} is supported")


class ArithmeticMode(PyEnum):
    """Scalar arithmetic mode."""
    EXACT = "exact"
    FLOAT = "float"


class Expected(PyEnum):
    """Expected outcome of a check."""
    HOLD = "hold"
    FAIL = "fail"
    RECORD = "record"


class Side(PyEnum):
    """Representation label: left, right or vector."""
    L = "L"
    R = "R"
    V = "V"

    @property
    def mirror(self) -> "Side":
        if self is Side.V:
            return Side.V
        return Side.R if self is Side.L else Side.L


class GaugeSector(PyEnum):
    """Gauge sector of a local transformation."""
    LORENTZ = "lorentz"
    SU2 = "su2"
    U1 = "u1"


class LagrangianPart(PyEnum):
    """Selectable part of the Lagrangian density."""
    TOTAL = "total"
    KINETIC = "kinetic"
    INNER = "inner"
    MASS = "mass"


class Suite(PyEnum):
    """Verification suites runnable from the command line."""
    AXIOMS = "axioms"
    GAMMA = "gamma"
    SIGMA = "sigma"
    TRANSFORMS = "transforms"
    LAGRANGIAN = "lagrangian"
    CROSS = "cross"
    DUALITY = "duality"


SUITE_ORDER = list(Suite)

Deviation = Union[Fraction, int, float]


def format_deviation(deviation: Deviation) -> str:
    """Render a deviation as an exact rational or a fixed-precision float."""
    if isinstance(deviation, (Fraction, int)):
        return str(Fraction(deviation))
    return f"{float(deviation):.6e}"


class CheckResult(BaseModel):
    """Outcome of one verified identity."""
    check_id: str
    reference: str
    mode: ArithmeticMode
    metric: str
    deviation: str
    holds: bool
    expected: Expected = Expected.HOLD
    passed: bool

    @classmethod
    def evaluate(
        cls,
        check_id: str,
        reference: str,
        deviation: Deviation,
        mode: ArithmeticMode,
        tol: float = 0.0,
        expected: Expected = Expected.HOLD,
        metric: Optional[str] = None,
    ) -> "CheckResult":
        """Build a result from a deviation; exact deviations must vanish."""
        if isinstance(deviation, (Fraction, int)):
            holds = deviation == 0
            metric = metric or "frobenius_squared"
        else:
            holds = float(deviation) <= tol
            metric = metric or "frobenius"
        return cls.from_outcome(
            check_id,
            reference,
            holds,
            format_deviation(deviation),
            mode,
            expected=expected,
            metric=metric,
        )

    @classmethod
    def from_outcome(
        cls,
        check_id: str,
        reference: str,
        holds: bool,
        deviation: str,
        mode: ArithmeticMode,
        expected: Expected = Expected.HOLD,
        metric: str = "frobenius_squared",
    ) -> "CheckResult":
        """Build a result whose truth value was decided by the caller."""
        return cls(
            check_id=check_id,
            reference=reference,
            mode=mode,
            metric=metric,
            deviation=deviation,
            holds=holds,
            expected=expected,
            passed=holds != (expected is Expected.FAIL),
        )

    @property
    def counts(self) -> bool:
        """Whether this check can fail a run."""
        return self.expected is not Expected.RECORD


class VerificationReport(BaseModel):
    """JSON report emitted by `verify`."""
    algebra: AlgebraKind
    mode: ArithmeticMode
    seed: int
    suites: List[Suite]
    checks: List[CheckResult]
    total: int
    passed: int
    failed: int
    recorded: int
    ok: bool

    @classmethod
    def build(
        cls,
        algebra: AlgebraKind,
        mode: ArithmeticMode,
        seed: int,
        suites: List[Suite],
        checks: List[CheckResult],
    ) -> "VerificationReport":
        """Sort checks by id and compute the summary counters."""
        ordered = sorted(checks, key=lambda c: c.check_id)
        counted = [c for c in ordered if c.counts]
        failed = sum(1 for c in counted if not c.passed)
        return cls(
            algebra=algebra,
            mode=mode,
            seed=seed,
            suites=suites,
            checks=ordered,
            total=len(ordered),
            passed=len(counted) - failed,
            failed=failed,
            recorded=len(ordered) - len(counted),
            ok=failed == 0,
        )


class RunConfig(BaseModel):
    """Validated configuration of one command-line run."""
    algebra: AlgebraKind = AlgebraKind.QUATERNION
    mode: ArithmeticMode = ArithmeticMode.EXACT
    tol: float = Field(default=1e-9, gt=0)
    seed: int = Field(default=1729, ge=0)
    convention_file: Optional[Path] = None
    suites: List[Suite] = Field(..., min_length=1)
    random_samples: int = Field(default=100, ge=1)
    transform_seeds: int = Field(default=20, ge=1)
    lagrangian_points: int = Field(default=100, ge=1)
    theta_cap: float = Field(default=2.0, gt=0)

    @field_validator("suites", mode="before")
    @classmethod
    def parse_suites(cls, v):
        if isinstance(v, str):
            v = [part.strip() for part in v.split(",") if part.strip()]
        if v is None:
            return []
        return v

    @field_validator("suites")
    @classmethod
    def order_suites(cls, v):
        return [s for s in SUITE_ORDER if s in set(v)]

    @model_validator(mode="after")
    def check_algebra_suites(self):
        if self.algebra is AlgebraKind.OCTONION and Suite.LAGRANGIAN in self.suites:
            raise ValueError(
                "the lagrangian suite is defined for the quaternion algebra only"
            )
        return self

    @classmethod
    def default_suites(cls, algebra: AlgebraKind) -> List[Suite]:
        """All suites meaningful for an algebra."""
        if algebra is AlgebraKind.OCTONION:
            return [s for s in SUITE_ORDER if s is not Suite.LAGRANGIAN]
        return list(SUITE_ORDER)


class ScanGrid(BaseModel):
    """Charge assignments and masses swept by the gauge scan."""
    t_l: List[float] = Field(default=[-0.5, 0.0, 0.5], min_length=1)
    t_r: List[float] = Field(default=[-0.5, 0.0, 0.5], min_length=1)
    y_l: List[float] = Field(default=[-1.0, 1.0], min_length=1)
    y_r: List[float] = Field(default=[-1.0, 1.0], min_length=1)
    m: List[float] = Field(default=[0.0, 0.5], min_length=1)
    sectors: List[GaugeSector] = Field(
        default=[GaugeSector.SU2, GaugeSector.U1], min_length=1
    )

    @field_validator("t_l", "t_r", "y_l", "y_r", "m", mode="before")
    @classmethod
    def parse_values(cls, v):
        if isinstance(v, str):
            v = [float(part) for part in v.split(",") if part.strip()]
        return v

    @field_validator("t_l", "t_r", "y_l", "y_r", "m")
    @classmethod
    def finite_values(cls, v):
        if any(value != value or abs(value) == float("inf") for value in v):
            raise ValueError("grid values must be finite")
        return v

    @field_validator("sectors", mode="before")
    @classmethod
    def parse_sectors(cls, v):
        if isinstance(v, str):
            v = [part.strip() for part in v.split(",") if part.strip()]
        return v


class ScanRow(BaseModel):
    """One row of the charge-constraint scan."""
    t_l: float = Field(serialization_alias="tL")
    t_r: float = Field(serialization_alias="tR")
    y_l: float = Field(serialization_alias="yL")
    y_r: float = Field(serialization_alias="yR")
    m: float
    sector: GaugeSector
    max_abs_variation: float


class DualityReport(BaseModel):
    """Self-duality spectrum of one side."""
    side: Side
    algebra: AlgebraKind
    eigenvalues: List[str]
    multiplicities: List[int]
    minimal_polynomial_residual: str
    holds: bool
