"""Lagrangian density, isospin projectors and gauge variations (quaternion sector).

The density is

    L = Psi^dagger [[e^mu_a Gamma^{L|a} D_{L|mu}, m* eta],
                    [m eta, e^mu_a Gamma^{R|a} D_{R|mu}]] Psi + h.c.

with D_{X|mu} = d_mu + 1/2 omega_mu^{ab} Sigma_{X|ab} + G^inner_{X|mu}, where the
inner connection of one side is built from the Gamma matrices of the other side.

Gauge variations are first order in a parameter t and are carried as dual numbers in
t. With A_X the spinor generator of a sector, the fields move as

    psi_X     -> psi_X + t A_X psi_X
    e^mu_a    -> e^mu_a - t e^mu_b (A_V)^b_a
    omega     -> omega + t (adjoint part of [A, G^outer] + i d eps^{ab})
    W^k_mu    -> W^k_mu + t (c_L f_ij^k alpha^i W^j_mu - d_mu alpha^k)
    B_mu      -> B_mu - t d_mu beta

Lorentz uses A_X = -i sum_{a<b} eps^{ab} Sigma_{X|ab}; SU(2) uses
A_X = c_X alpha^i T^X_i with T^L_i = i Gamma_{R|i}, T^R_i = i Gamma_{L|i} and
c_X = (i/hbar) g t_X; U(1) uses A_X = c'_X beta Y_X with Y_L = i Gamma_{R|0},
Y_R = i Gamma_{L|0} and c'_X = (i/hbar) (g'/2) y_X. The W rule is read off the L
sector, so the R sector is compensated only when t_L + t_R = 0; the mass term is
U(1) invariant only when y_L = y_R.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from spinlink.algebra import quaternion_table
from spinlink.dual import Dual, tangent
from spinlink.errors import AlgebraMismatchError, UnsupportedSectorError
from spinlink.fields import (
    CouplingConfig,
    FieldConfiguration,
    FieldPoint,
    ParameterField,
    evaluate_fields,
)
from spinlink.generators import CheckCollector, GeneratorSet, Pair
from spinlink.linalg import EXACT, FLOAT, CMatrix, Scalar, commutator, deviation
from spinlink.models import (
    AlgebraKind,
    CheckResult,
    Expected,
    GaugeSector,
    LagrangianPart,
    ScanGrid,
    ScanRow,
    Side,
)

logger = logging.getLogger(__name__)

# L_mass = X + X* with X = m* psi_L^dag eta psi_R + m psi_R^dag eta psi_L
MASS_NORMALIZATION = 4

SPINOR_SIDES = (Side.L, Side.R)


def _structure_constants(basis: Sequence[np.ndarray]) -> np.ndarray:
    """f[i, j, k] with [B_i, B_j] = f_ij^k B_k for linearly independent B_i."""
    columns = np.stack([b.reshape(-1) for b in basis], axis=1)
    size = len(basis)
    f = np.zeros((size, size, size), dtype=complex)
    for i in range(size):
        for j in range(size):
            bracket = basis[i] @ basis[j] - basis[j] @ basis[i]
            f[i, j], *_ = np.linalg.lstsq(columns, bracket.reshape(-1), rcond=None)
    return f


@dataclass(frozen=True)
class LagrangianOperators:
    """Float matrices entering the density, taken from a quaternion generator set."""

    pairs: List[Pair]
    eta: np.ndarray = field(repr=False)
    gamma_up: Dict[Side, List[np.ndarray]] = field(repr=False)
    sigma: Dict[Side, List[np.ndarray]] = field(repr=False)
    sigma_v: List[np.ndarray] = field(repr=False)
    isospin: Dict[Side, List[np.ndarray]] = field(repr=False)
    hypercharge: Dict[Side, np.ndarray] = field(repr=False)
    sigma_structure: np.ndarray = field(repr=False)
    isospin_structure: np.ndarray = field(repr=False)

    @classmethod
    def from_generators(cls, gs: GeneratorSet) -> "LagrangianOperators":
        if gs.algebra is not AlgebraKind.QUATERNION:
            raise AlgebraMismatchError("The Lagrangian needs the quaternion algebra")
        if gs.mode is not FLOAT:
            gs = gs.to_float()
        pairs = gs.pairs
        sigma = {
            s: [gs.sigma[s][p].to_numpy() for p in pairs] for s in SPINOR_SIDES
        }
        # Sigma_L and Sigma_R span only one chiral half each; Sigma_V is faithful.
        sigma_v = [gs.sigma[Side.V][p].to_numpy() for p in pairs]
        isospin = {
            s: [1j * gs.gamma[s.mirror][i].to_numpy() for i in range(1, gs.n)]
            for s in SPINOR_SIDES
        }
        return cls(
            pairs=pairs,
            eta=gs.eta.matrix.to_numpy(),
            gamma_up={
                s: [gs.gamma_upper(s, a).to_numpy() for a in range(gs.n)]
                for s in SPINOR_SIDES
            },
            sigma=sigma,
            sigma_v=sigma_v,
            isospin=isospin,
            hypercharge={
                s: 1j * gs.gamma[s.mirror][0].to_numpy() for s in SPINOR_SIDES
            },
            sigma_structure=_structure_constants(sigma_v),
            isospin_structure=_structure_constants(isospin[Side.L]),
        )

    def pair_coefficients(self, t: np.ndarray) -> np.ndarray:
        """Coefficients t^{ab}, a < b, of an antisymmetric array."""
        return np.array([t[..., a, b] for a, b in self.pairs]).T

    def lorentz(self, side: Side, eps_upper: np.ndarray) -> np.ndarray:
        """-i sum_{a<b} eps^{ab} Sigma_{X|ab}; Side.V gives the vector generator."""
        gens = self.sigma_v if side is Side.V else self.sigma[side]
        return sum(-1j * eps_upper[a, b] * g for (a, b), g in zip(self.pairs, gens))


@lru_cache(maxsize=None)
def default_operators() -> LagrangianOperators:
    return LagrangianOperators.from_generators(
        GeneratorSet.build(quaternion_table(), FLOAT)
    )


def _raise_pair(ops: LagrangianOperators, t: np.ndarray) -> np.ndarray:
    """eps^{ab} = eta^aa eta^bb eps_ab on the last two axes."""
    d = np.diag(ops.eta).real
    return t * np.outer(d, d)


def _outer(ops: LagrangianOperators, side: Side, omega_mu) -> object:
    """1/2 omega_mu^{ab} Sigma_{X|ab} = sum_{a<b} omega_mu^{ab} Sigma_{X|ab}."""
    total = 0
    for (a, b), s in zip(ops.pairs, ops.sigma[side]):
        total = total + omega_mu[a, b] * s
    return total


def _inner(
    ops: LagrangianOperators, side: Side, cc: CouplingConfig, w, b, mu: int
) -> object:
    total = 0
    c = cc.isospin_coupling(side)
    for i, t in enumerate(ops.isospin[side]):
        total = total + c * w[i, mu] * t
    return total + cc.hypercharge_coupling(side) * b[mu] * ops.hypercharge[side]


def _side_terms(
    point: FieldPoint,
    side: Side,
    ops: LagrangianOperators,
    cc: CouplingConfig,
) -> Tuple[object, object]:
    """(kinetic + outer, inner) contributions of one side before h.c."""
    psi = point.psi[side]
    psi_dag = psi.conj()
    kinetic, inner = 0, 0
    for mu in range(len(ops.eta)):
        slash = 0
        for a, g in enumerate(ops.gamma_up[side]):
            slash = slash + point.vierbein[mu, a] * g
        outer = _outer(ops, side, point.omega[mu])
        kinetic = kinetic + psi_dag @ (slash @ (point.dpsi[side][mu] + outer @ psi))
        g_inner = _inner(ops, side, cc, point.w, point.b, mu)
        inner = inner + psi_dag @ (slash @ (g_inner @ psi))
    return kinetic, inner


def _mass(point: FieldPoint, ops: LagrangianOperators, cc: CouplingConfig) -> object:
    psi_l, psi_r = point.psi[Side.L], point.psi[Side.R]
    m = cc.m
    return np.conj(m) * (psi_l.conj() @ (ops.eta @ psi_r)) + m * (
        psi_r.conj() @ (ops.eta @ psi_l)
    )


def _unconjugated(
    point: FieldPoint,
    ops: LagrangianOperators,
    cc: CouplingConfig,
    part: LagrangianPart,
) -> object:
    """The scalar X of L = X + X* restricted to one part."""
    total = 0
    if part in (LagrangianPart.TOTAL, LagrangianPart.KINETIC, LagrangianPart.INNER):
        for side in SPINOR_SIDES:
            kinetic, inner = _side_terms(point, side, ops, cc)
            if part is not LagrangianPart.INNER:
                total = total + kinetic
            if part is not LagrangianPart.KINETIC:
                total = total + inner
    if part in (LagrangianPart.TOTAL, LagrangianPart.MASS):
        total = total + _mass(point, ops, cc)
    return total


def _with_hc(value):
    return value + value.conj() if isinstance(value, Dual) else value + np.conj(value)


def covariant_derivative(
    side: Side,
    fc: FieldConfiguration,
    cc: CouplingConfig,
    x: np.ndarray,
    mu: int,
    ops: Optional[LagrangianOperators] = None,
) -> np.ndarray:
    """D_{X|mu} psi_X at x."""
    if side not in SPINOR_SIDES:
        raise ValueError("Covariant derivatives act on the L and R spinors")
    ops = ops or default_operators()
    point = evaluate_fields(fc, x)
    psi = point.psi[side]
    connection = _outer(ops, side, point.omega[mu]) + _inner(
        ops, side, cc, point.w, point.b, mu
    )
    return point.dpsi[side][mu] + connection @ psi


def lagrangian_density_complex(
    fc: FieldConfiguration,
    cc: CouplingConfig,
    x: np.ndarray,
    part: LagrangianPart = LagrangianPart.TOTAL,
    ops: Optional[LagrangianOperators] = None,
) -> complex:
    """X + X* as a complex number; its imaginary part vanishes."""
    ops = ops or default_operators()
    return complex(_with_hc(_unconjugated(evaluate_fields(fc, x), ops, cc, part)))


def lagrangian_density(
    fc: FieldConfiguration,
    cc: CouplingConfig,
    x: np.ndarray,
    part: LagrangianPart = LagrangianPart.TOTAL,
    ops: Optional[LagrangianOperators] = None,
) -> float:
    return lagrangian_density_complex(fc, cc, x, part, ops).real


def inner_imaginary_part(
    fc: FieldConfiguration,
    cc: CouplingConfig,
    x: np.ndarray,
    ops: Optional[LagrangianOperators] = None,
) -> float:
    """|Im X| of the inner-connection terms before h.c. is added."""
    ops = ops or default_operators()
    point = evaluate_fields(fc, x)
    value = _unconjugated(point, ops, cc, LagrangianPart.INNER)
    return abs(complex(value).imag)


@dataclass(frozen=True)
class ProjectorSet:
    """Isospin projectors P_{X|e} and P_{X|nu}."""

    electron: Dict[Side, CMatrix]
    neutrino: Dict[Side, CMatrix]

    def items(self):
        for side in SPINOR_SIDES:
            yield side, "e", self.electron[side]
            yield side, "nu", self.neutrino[side]


def build_projectors(gs: GeneratorSet) -> ProjectorSet:
    """P_{L|e,nu} = -(i/2)(Gamma_{R|0} -+ Gamma_{R|3}); the R pair swaps the signs."""
    if gs.algebra is not AlgebraKind.QUATERNION:
        raise AlgebraMismatchError("Isospin projectors are defined on quaternions")
    half = -Scalar.imag_unit(gs.mode) / 2
    gl, gr = gs.gamma[Side.L], gs.gamma[Side.R]
    return ProjectorSet(
        electron={
            Side.L: (gr[0] - gr[3]).scale(half),
            Side.R: (gl[0] + gl[3]).scale(half),
        },
        neutrino={
            Side.L: (gr[0] + gr[3]).scale(half),
            Side.R: (gl[0] - gl[3]).scale(half),
        },
    )


def verify_projectors(ps: ProjectorSet, gs: GeneratorSet) -> List[CheckResult]:
    """Projector algebra: idempotence, completeness, eta-orthogonality and traces."""
    out = CheckCollector(gs.mode, 1e-12)
    one = gs.identity()
    zero = CMatrix.zeros(gs.n, mode=gs.mode)
    eta = gs.eta.matrix
    for side, label, p in ps.items():
        tag = f"{side.value}_{label}"
        out.add(f"projectors.idempotent_{tag}", "P^2 = P", deviation(p @ p, p))
        out.add(f"projectors.hermitian_{tag}", "P^dagger = P", deviation(p.dagger(), p))
        out.results.append(
            CheckResult.evaluate(
                f"projectors.trace_{tag}",
                "trace P = 2",
                _scalar_size(p.trace() - 2),
                gs.mode,
                tol=1e-12,
                metric="abs2" if gs.mode is EXACT else "abs",
            )
        )
    for side in SPINOR_SIDES:
        e, nu = ps.electron[side], ps.neutrino[side]
        out.add(
            f"projectors.complete_{side.value}",
            "P_{X|e} + P_{X|nu} = 1",
            deviation(e + nu, one),
        )
        out.add(
            f"projectors.annihilate_{side.value}",
            "P_{X|e} P_{X|nu} = P_{X|nu} P_{X|e} = 0",
            max(deviation(e @ nu, zero), deviation(nu @ e, zero)),
        )
    for side in SPINOR_SIDES:
        other = side.mirror
        out.add(
            f"projectors.eta_orthogonal_{side.value}",
            f"P_{{{side.value}|e}} eta P_{{{other.value}|nu}} = "
            f"P_{{{side.value}|nu}} eta P_{{{other.value}|e}} = 0",
            max(
                deviation(ps.electron[side] @ eta @ ps.neutrino[other], zero),
                deviation(ps.neutrino[side] @ eta @ ps.electron[other], zero),
            ),
        )
    channels = (
        ps.electron[Side.L].dagger() @ eta @ ps.electron[Side.R]
        + ps.neutrino[Side.L].dagger() @ eta @ ps.neutrino[Side.R]
    )
    out.add(
        "projectors.mass_channels",
        "P_{L|e}^dagger eta P_{R|e} + P_{L|nu}^dagger eta P_{R|nu} = eta",
        deviation(channels, eta),
    )
    return out.results


def verify_projector_commutation(
    ps: ProjectorSet, gs: GeneratorSet
) -> List[CheckResult]:
    """Which terms of D_{X|mu} the projectors of side X pass through."""
    out = CheckCollector(gs.mode, 1e-12)
    i_unit = Scalar.imag_unit(gs.mode)
    for side in SPINOR_SIDES:
        other = side.mirror
        projectors = (ps.electron[side], ps.neutrino[side])
        same = gs.gamma[side]
        crossed = gs.gamma[other]
        for a in range(gs.n):
            out.add(
                f"projectors.commute_gamma_{side.value}[{a}]",
                f"[P_{side.value}, Gamma_{{{side.value}|a}}] = 0",
                max(frob_commutator(p, same[a]) for p in projectors),
            )
        for a in (0, 3):
            out.add(
                f"projectors.commute_inner_{side.value}[{a}]",
                f"[P_{side.value}, i Gamma_{{{other.value}|a}}] = 0",
                max(frob_commutator(p, crossed[a].scale(i_unit)) for p in projectors),
            )
        for a in (1, 2):
            out.add(
                f"projectors.noncommute_inner_{side.value}[{a}]",
                f"[P_{side.value}, Gamma_{{{other.value}|a}}] != 0",
                max(frob_commutator(p, crossed[a]) for p in projectors),
                expected=Expected.FAIL,
            )
        out.add_max(
            f"projectors.commute_sigma_{side.value}",
            f"[P_{side.value}, Sigma_{{{side.value}|ab}}] for all ab",
            (
                frob_commutator(p, gs.sigma[side][pair])
                for p in projectors
                for pair in gs.pairs
            ),
            expected=Expected.RECORD,
        )
    return out.results


def frob_commutator(m: CMatrix, n: CMatrix):
    return deviation(commutator(m, n), CMatrix.zeros(m.rows, mode=m.mode))


def _scalar_size(s: Scalar):
    return s.abs2() if s.mode is EXACT else abs(s.to_complex())


def mass_term_decomposition(
    fc: FieldConfiguration,
    cc: CouplingConfig,
    x: np.ndarray,
    ops: Optional[LagrangianOperators] = None,
    projectors: Optional[ProjectorSet] = None,
) -> Tuple[float, float]:
    """(Re(m* psi_{L|e}^dag eta psi_{R|e}), Re(m* psi_{L|nu}^dag eta psi_{R|nu})).

    MASS_NORMALIZATION times their sum is the mass part of lagrangian_density.
    """
    ops = ops or default_operators()
    ps = projectors or default_projectors()
    point = evaluate_fields(fc, x)
    psi_l, psi_r = point.psi[Side.L], point.psi[Side.R]
    m_conj = np.conj(cc.m)
    parts = []
    for channel in (ps.electron, ps.neutrino):
        left = channel[Side.L].to_numpy() @ psi_l
        right = channel[Side.R].to_numpy() @ psi_r
        parts.append(float((m_conj * (left.conj() @ ops.eta @ right)).real))
    return parts[0], parts[1]


@lru_cache(maxsize=None)
def default_projectors() -> ProjectorSet:
    return build_projectors(GeneratorSet.build(quaternion_table(), FLOAT))


def _parse_sector(sector: Union[GaugeSector, str]) -> GaugeSector:
    if isinstance(sector, GaugeSector):
        return sector
    try:
        return GaugeSector(str(sector).lower())
    except ValueError:
        raise UnsupportedSectorError(f"Unknown gauge sector: {sector!r}") from None


def _varied_point(
    sector: GaugeSector,
    point: FieldPoint,
    ops: LagrangianOperators,
    cc: CouplingConfig,
    param: ParameterField,
    x: np.ndarray,
) -> FieldPoint:
    """The fields as dual numbers whose tangents are the first-order variations."""
    value, grad = param.at(x)
    n = len(ops.eta)
    generator: Dict[Side, np.ndarray] = {}
    generator_grad: Dict[Side, List[np.ndarray]] = {}
    d_vierbein = np.zeros_like(point.vierbein, dtype=complex)
    d_omega = np.zeros_like(point.omega, dtype=complex)
    d_w = np.zeros_like(point.w, dtype=complex)
    d_b = np.zeros_like(point.b, dtype=complex)

    if sector is GaugeSector.LORENTZ:
        eps = _raise_pair(ops, value)
        eps_grad = _raise_pair(ops, grad)
        for side in SPINOR_SIDES:
            generator[side] = ops.lorentz(side, eps)
            generator_grad[side] = [ops.lorentz(side, eps_grad[mu]) for mu in range(n)]
        d_vierbein = -point.vierbein @ ops.lorentz(Side.V, eps)
        eps_pairs = ops.pair_coefficients(eps)
        for mu in range(n):
            omega_pairs = ops.pair_coefficients(point.omega[mu])
            adjoint = -1j * np.einsum(
                "p,q,pqr->r", eps_pairs, omega_pairs, ops.sigma_structure
            )
            shift = adjoint + 1j * ops.pair_coefficients(eps_grad[mu])
            for (a, b), s in zip(ops.pairs, shift):
                d_omega[mu, a, b] = s
                d_omega[mu, b, a] = -s
    elif sector is GaugeSector.SU2:
        for side in SPINOR_SIDES:
            c = cc.isospin_coupling(side)
            generator[side] = sum(
                c * value[i] * t for i, t in enumerate(ops.isospin[side])
            )
            generator_grad[side] = [
                sum(c * grad[mu, i] * t for i, t in enumerate(ops.isospin[side]))
                for mu in range(n)
            ]
        c_l = cc.isospin_coupling(Side.L)
        adjoint = c_l * np.einsum("i,jm,ijk->km", value, point.w, ops.isospin_structure)
        d_w = adjoint - grad.T
    elif sector is GaugeSector.U1:
        for side in SPINOR_SIDES:
            c = cc.hypercharge_coupling(side)
            generator[side] = c * value * ops.hypercharge[side]
            generator_grad[side] = [
                c * grad[mu] * ops.hypercharge[side] for mu in range(n)
            ]
        d_b = -grad
    else:
        raise UnsupportedSectorError(f"Unknown gauge sector: {sector!r}")

    psi, dpsi = {}, {}
    for side in SPINOR_SIDES:
        a_x = generator[side]
        base, base_grad = point.psi[side], point.dpsi[side]
        psi[side] = Dual(base, a_x @ base)
        moved_grad = np.stack(
            [generator_grad[side][mu] @ base + a_x @ base_grad[mu] for mu in range(n)]
        )
        dpsi[side] = Dual(base_grad, moved_grad)
    return FieldPoint(
        psi=psi,
        dpsi=dpsi,
        vierbein=Dual(point.vierbein, d_vierbein),
        omega=Dual(point.omega, d_omega),
        w=Dual(point.w, d_w),
        b=Dual(point.b, d_b),
    )


def gauge_variation(
    sector: Union[GaugeSector, str],
    fc: FieldConfiguration,
    cc: CouplingConfig,
    param: ParameterField,
    x: np.ndarray,
    part: LagrangianPart = LagrangianPart.TOTAL,
    ops: Optional[LagrangianOperators] = None,
) -> float:
    """First-order change of the density (or one part of it) at x."""
    sector = _parse_sector(sector)
    if param.sector is not sector:
        raise UnsupportedSectorError(
            f"{param.sector.value} parameters cannot drive a {sector.value} variation"
        )
    ops = ops or default_operators()
    point = evaluate_fields(fc, x)
    varied = _varied_point(sector, point, ops, cc, param, np.asarray(x, dtype=float))
    value = _with_hc(_unconjugated(varied, ops, cc, part))
    return float(np.real(tangent(value)))


def sample_points(rng: np.random.Generator, count: int, n: int = 4) -> np.ndarray:
    """Evaluation points uniform in [-1, 1]^n."""
    return rng.uniform(-1.0, 1.0, size=(count, n))


def charge_constraint_scan(
    grid: ScanGrid,
    seed: int = 0,
    points: int = 5,
    ops: Optional[LagrangianOperators] = None,
) -> List[ScanRow]:
    """Max |delta L_mass| under local transformations for every charge assignment."""
    ops = ops or default_operators()
    rng = np.random.default_rng(seed)
    configs = [FieldConfiguration.random(seed + k) for k in range(points)]
    xs = sample_points(rng, points)
    params = {
        sector: [ParameterField.random(sector, rng) for _ in range(points)]
        for sector in grid.sectors
    }
    rows = []
    charges = product(grid.t_l, grid.t_r, grid.y_l, grid.y_r, grid.m)
    for t_l, t_r, y_l, y_r, m in charges:
        cc = CouplingConfig(t_l=t_l, t_r=t_r, y_l=y_l, y_r=y_r, m1=m, m2=0.0)
        for sector in grid.sectors:
            worst = max(
                abs(
                    gauge_variation(
                        sector, fc, cc, p, x, part=LagrangianPart.MASS, ops=ops
                    )
                )
                for fc, p, x in zip(configs, params[sector], xs)
            )
            rows.append(
                ScanRow(
                    t_l=t_l,
                    t_r=t_r,
                    y_l=y_l,
                    y_r=y_r,
                    m=m,
                    sector=sector,
                    max_abs_variation=worst,
                )
            )
    logger.info(f"Charge scan produced {len(rows)} rows")
    return rows


def run_lagrangian_checks(
    gs: GeneratorSet,
    seed: int,
    points: int = 100,
    tol: float = 1e-9,
    cc: Optional[CouplingConfig] = None,
) -> List[CheckResult]:
    """Projector algebra, reality, mass channels and gauge invariance."""
    exact = gs if gs.mode is EXACT else GeneratorSet.build(gs.table, EXACT)
    ps = build_projectors(exact)
    results = verify_projectors(ps, exact) + verify_projector_commutation(ps, exact)

    ops = LagrangianOperators.from_generators(gs)
    float_ps = build_projectors(exact.to_float())
    cc = cc or CouplingConfig()
    rng = np.random.default_rng(seed)
    xs = sample_points(rng, points)
    configs = [FieldConfiguration.random(seed + k) for k in range(points)]

    imaginary, inner, channels = [], [], []
    rigid: Dict[GaugeSector, List[float]] = {s: [] for s in GaugeSector}
    local: Dict[GaugeSector, List[float]] = {s: [] for s in GaugeSector}
    u1_equal, u1_unequal = [], []
    unequal = cc.model_copy(update={"y_r": cc.y_l + 1.0})
    for fc, x in zip(configs, xs):
        imaginary.append(abs(lagrangian_density_complex(fc, cc, x, ops=ops).imag))
        inner.append(inner_imaginary_part(fc, cc, x, ops=ops))
        e, nu = mass_term_decomposition(fc, cc, x, ops=ops, projectors=float_ps)
        mass = lagrangian_density(fc, cc, x, LagrangianPart.MASS, ops=ops)
        channels.append(abs(MASS_NORMALIZATION * (e + nu) - mass))
        for sector in GaugeSector:
            steady = ParameterField.random(sector, rng, local=False)
            moving = ParameterField.random(sector, rng, local=True)
            rigid[sector].append(
                abs(gauge_variation(sector, fc, cc, steady, x, ops=ops))
            )
            local[sector].append(
                abs(gauge_variation(sector, fc, cc, moving, x, ops=ops))
            )
        beta = ParameterField.random(GaugeSector.U1, rng)
        mass_part = LagrangianPart.MASS
        u1_equal.append(
            abs(gauge_variation(GaugeSector.U1, fc, cc, beta, x, mass_part, ops))
        )
        u1_unequal.append(
            abs(gauge_variation(GaugeSector.U1, fc, unequal, beta, x, mass_part, ops))
        )

    def scalar(check_id, reference, devs, expected=Expected.HOLD, limit=tol):
        return CheckResult.evaluate(
            check_id,
            reference,
            max(devs, default=0.0),
            FLOAT,
            tol=limit,
            expected=expected,
            metric="abs",
        )

    results.append(scalar("lagrangian.real", "Im L = 0", imaginary))
    results.append(
        scalar("lagrangian.inner_hermitian", "inner terms are real before h.c.", inner)
    )
    results.append(
        scalar(
            "lagrangian.mass_channels",
            f"{MASS_NORMALIZATION} (Re(m* psi_Le^dag eta psi_Re) + "
            "Re(m* psi_Lnu^dag eta psi_Rnu)) = L_mass",
            channels,
            limit=1e-12,
        )
    )
    for sector in GaugeSector:
        results.append(
            scalar(
                f"lagrangian.rigid_{sector.value}",
                f"delta L = 0 under constant {sector.value} parameters",
                rigid[sector],
            )
        )
        results.append(
            scalar(
                f"lagrangian.local_{sector.value}",
                f"delta L = 0 under local {sector.value} parameters",
                local[sector],
            )
        )
    results.append(
        scalar(
            "lagrangian.u1_mass_equal_charges",
            "delta L_mass = 0 under local U(1) when y_L = y_R",
            u1_equal,
            limit=1e-10,
        )
    )
    results.append(
        scalar(
            "lagrangian.u1_mass_unequal_charges",
            "delta L_mass != 0 under local U(1) when y_L != y_R",
            u1_unequal,
            expected=Expected.FAIL,
            limit=1e-4,
        )
    )
    logger.info(f"Lagrangian checks at {points} points complete")
    return results
