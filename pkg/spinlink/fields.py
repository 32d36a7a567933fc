"""Couplings, smooth test field families and their evaluation at spacetime points.

Every field is a low-order polynomial in x (spinors additionally carry a plane-wave
phase), written with plain arithmetic so it evaluates on `Dual` coordinates as well
as on numpy arrays. Spacetime derivatives therefore come out exact through `jet`.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from spinlink.dual import dexp, jet
from spinlink.errors import SingularVierbeinError
from spinlink.models import GaugeSector, Side

logger = logging.getLogger(__name__)

SPACETIME_DIM = 4
ISOSPIN_DIM = 3
VIERBEIN_SPREAD = 0.1
SINGULAR_DET = 1e-12


class CouplingConfig(BaseModel):
    """Coupling constants, charges and the complex mass m = m1 + i m2."""

    g: float = Field(default=0.65, description="SU(2) coupling")
    gprime: float = Field(default=0.35, description="U(1) coupling")
    t_l: float = Field(default=0.5, description="Isospin charge of the L sector")
    t_r: float = Field(default=-0.5, description="Isospin charge of the R sector")
    y_l: float = Field(default=-1.0, description="Hypercharge of the L sector")
    y_r: float = Field(default=-1.0, description="Hypercharge of the R sector")
    m1: float = Field(default=0.5, description="Real part of the mass")
    m2: float = Field(default=0.25, description="Imaginary part of the mass")
    hbar: float = Field(default=1.0, gt=0, description="Reduced Planck constant")

    @property
    def m(self) -> complex:
        return complex(self.m1, self.m2)

    def isospin_coupling(self, side: Side) -> complex:
        """(i/hbar) g t_X."""
        t = self.t_l if side is Side.L else self.t_r
        return 1j / self.hbar * self.g * t

    def hypercharge_coupling(self, side: Side) -> complex:
        """(i/hbar) (g'/2) y_X."""
        y = self.y_l if side is Side.L else self.y_r
        return 1j / self.hbar * self.gprime / 2 * y


def _linear(offset: np.ndarray, slope: np.ndarray, x: Any) -> Any:
    """offset + x^nu slope[nu]."""
    total = offset
    for nu in range(SPACETIME_DIM):
        total = total + x[nu] * slope[nu]
    return total


def _antisymmetric(t: np.ndarray) -> np.ndarray:
    return 0.5 * (t - np.swapaxes(t, -1, -2))


@dataclass(frozen=True)
class FieldConfiguration:
    """Seeded smooth fields psi_L, psi_R, e^mu_a, omega_mu^{ab}, W^i_mu and B_mu."""

    chi: Dict[Side, np.ndarray] = field(repr=False)
    spinor_slope: Dict[Side, np.ndarray] = field(repr=False)
    wave: Dict[Side, np.ndarray] = field(repr=False)
    vierbein_offset: np.ndarray = field(repr=False)
    vierbein_slope: np.ndarray = field(repr=False)
    omega_offset: np.ndarray = field(repr=False)
    omega_slope: np.ndarray = field(repr=False)
    w_offset: np.ndarray = field(repr=False)
    w_slope: np.ndarray = field(repr=False)
    b_offset: np.ndarray = field(repr=False)
    b_slope: np.ndarray = field(repr=False)
    seed: Optional[int] = None

    @classmethod
    def random(cls, seed: int, scale: float = 0.5) -> "FieldConfiguration":
        """Coefficients drawn from numpy's seeded generator."""
        rng = np.random.default_rng(seed)
        n = SPACETIME_DIM

        def cplx(*shape):
            return scale * (rng.normal(size=shape) + 1j * rng.normal(size=shape))

        def real(*shape):
            return scale * rng.normal(size=shape)

        sides = (Side.L, Side.R)
        fc = cls(
            chi={s: cplx(n) for s in sides},
            spinor_slope={s: cplx(n, n) for s in sides},
            wave={s: real(n) for s in sides},
            vierbein_offset=np.eye(n) + VIERBEIN_SPREAD * rng.normal(size=(n, n)),
            vierbein_slope=VIERBEIN_SPREAD * rng.normal(size=(n, n, n)),
            omega_offset=_antisymmetric(real(n, n, n)),
            omega_slope=_antisymmetric(real(n, n, n, n)),
            w_offset=real(ISOSPIN_DIM, n),
            w_slope=real(n, ISOSPIN_DIM, n),
            b_offset=real(n),
            b_slope=real(n, n),
            seed=seed,
        )
        logger.debug(f"Random field configuration drawn with seed {seed}")
        return fc

    @classmethod
    def flat(
        cls,
        chi_l: np.ndarray,
        chi_r: np.ndarray,
        wave_l: Optional[np.ndarray] = None,
        wave_r: Optional[np.ndarray] = None,
    ) -> "FieldConfiguration":
        """Plane-wave spinors on a unit vierbein with all connections switched off."""
        n = SPACETIME_DIM
        zero_wave = np.zeros(n)
        return cls(
            chi={
                Side.L: np.asarray(chi_l, complex),
                Side.R: np.asarray(chi_r, complex),
            },
            spinor_slope={s: np.zeros((n, n), complex) for s in (Side.L, Side.R)},
            wave={
                Side.L: zero_wave if wave_l is None else np.asarray(wave_l, float),
                Side.R: zero_wave if wave_r is None else np.asarray(wave_r, float),
            },
            vierbein_offset=np.eye(n),
            vierbein_slope=np.zeros((n, n, n)),
            omega_offset=np.zeros((n, n, n)),
            omega_slope=np.zeros((n, n, n, n)),
            w_offset=np.zeros((ISOSPIN_DIM, n)),
            w_slope=np.zeros((n, ISOSPIN_DIM, n)),
            b_offset=np.zeros(n),
            b_slope=np.zeros((n, n)),
        )

    def with_fields(self, **changes) -> "FieldConfiguration":
        return replace(self, **changes)

    def psi(self, side: Side, x: Any) -> Any:
        """(chi + x^mu K_mu) exp(i k.x)."""
        polynomial = _linear(self.chi[side], self.spinor_slope[side], x)
        return polynomial * dexp(1j * (x @ self.wave[side]))

    def vierbein(self, x: Any) -> Any:
        """e^mu_a as a matrix indexed [mu, a]."""
        return _linear(self.vierbein_offset, self.vierbein_slope, x)

    def omega(self, x: Any) -> Any:
        """omega_mu^{ab} indexed [mu, a, b]."""
        return _linear(self.omega_offset, self.omega_slope, x)

    def w(self, x: Any) -> Any:
        """W^i_mu indexed [i, mu]."""
        return _linear(self.w_offset, self.w_slope, x)

    def b(self, x: Any) -> Any:
        return _linear(self.b_offset, self.b_slope, x)


@dataclass
class FieldPoint:
    """Field values at one point, possibly dual numbers in a variation parameter."""

    psi: Dict[Side, Any]
    dpsi: Dict[Side, Any]
    vierbein: Any
    omega: Any
    w: Any
    b: Any


def evaluate_fields(fc: FieldConfiguration, x: np.ndarray) -> FieldPoint:
    """Values at x, with spinor derivatives d_mu psi stacked along axis 0."""
    x = np.asarray(x, dtype=float)
    vierbein = fc.vierbein(x)
    det = float(np.linalg.det(vierbein))
    if abs(det) < SINGULAR_DET:
        raise SingularVierbeinError(f"Vierbein determinant {det:.3e} at x = {x}")
    psi, dpsi = {}, {}
    for side in (Side.L, Side.R):
        psi[side], dpsi[side] = jet(lambda y, s=side: fc.psi(s, y), x)
    return FieldPoint(
        psi=psi,
        dpsi=dpsi,
        vierbein=vierbein,
        omega=fc.omega(x),
        w=fc.w(x),
        b=fc.b(x),
    )


PARAMETER_SHAPES: Dict[GaugeSector, Tuple[int, ...]] = {
    GaugeSector.LORENTZ: (SPACETIME_DIM, SPACETIME_DIM),
    GaugeSector.SU2: (ISOSPIN_DIM,),
    GaugeSector.U1: (),
}


@dataclass(frozen=True)
class ParameterField:
    """Linear gauge parameter field: eps_ab(x), alpha^i(x) or beta(x)."""

    sector: GaugeSector
    offset: np.ndarray
    slope: np.ndarray

    @classmethod
    def constant(cls, sector: GaugeSector, value: Any) -> "ParameterField":
        offset = np.asarray(value, dtype=float)
        if offset.shape != PARAMETER_SHAPES[sector]:
            raise ValueError(
                f"{sector.value} parameters have shape {PARAMETER_SHAPES[sector]}"
            )
        if sector is GaugeSector.LORENTZ:
            offset = _antisymmetric(offset)
        return cls(sector, offset, np.zeros((SPACETIME_DIM,) + offset.shape))

    @classmethod
    def random(
        cls,
        sector: GaugeSector,
        rng: np.random.Generator,
        local: bool = True,
        scale: float = 0.3,
    ) -> "ParameterField":
        shape = PARAMETER_SHAPES[sector]
        offset = scale * rng.normal(size=shape)
        slope = scale * rng.normal(size=(SPACETIME_DIM,) + shape)
        if not local:
            slope = np.zeros_like(slope)
        if sector is GaugeSector.LORENTZ:
            offset, slope = _antisymmetric(offset), _antisymmetric(slope)
        return cls(sector, np.asarray(offset), np.asarray(slope))

    @property
    def is_constant(self) -> bool:
        return not np.any(self.slope)

    def at(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Value and gradient d_mu at x (gradient stacked along axis 0)."""
        value, grad = jet(lambda y: _linear(self.offset, self.slope, y), np.asarray(x))
        return np.asarray(value), grad
