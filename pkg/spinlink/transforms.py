"""Finite spinor and vector transformations and their invariants."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from spinlink.dual import jet
from spinlink.errors import ModeMismatchError, ShapeMismatchError
from spinlink.generators import CheckCollector, GeneratorSet, sigma_pairs
from spinlink.linalg import FLOAT, CMatrix, deviation
from spinlink.models import CheckResult, Expected, Side

logger = logging.getLogger(__name__)

SIDES = (Side.L, Side.R, Side.V)


class BoostRotationParams(BaseModel):
    """Antisymmetric real parameters theta_ab (lower indices)."""

    theta: List[List[float]]
    cap: float = Field(default=2.0, gt=0)

    @model_validator(mode="after")
    def check_theta(self):
        n = len(self.theta)
        if any(len(row) != n for row in self.theta):
            raise ValueError("theta must be a square array")
        for a in range(n):
            for b in range(n):
                if self.theta[a][b] != -self.theta[b][a]:
                    raise ValueError(f"theta is not antisymmetric at ({a}, {b})")
                if abs(self.theta[a][b]) > self.cap:
                    raise ValueError(
                        f"theta[{a}][{b}] = {self.theta[a][b]} exceeds the cap"
                    )
        return self

    @classmethod
    def zero(cls, n: int = 4) -> "BoostRotationParams":
        return cls(theta=[[0.0] * n for _ in range(n)])

    @classmethod
    def from_pairs(
        cls, n: int, values: Dict[Tuple[int, int], float], cap: float = 2.0
    ) -> "BoostRotationParams":
        """Parameters with theta_ab = value and theta_ba = -value for each pair."""
        theta = [[0.0] * n for _ in range(n)]
        for (a, b), value in values.items():
            theta[a][b] = float(value)
            theta[b][a] = -float(value)
        return cls(theta=theta, cap=cap)

    @classmethod
    def random(
        cls, rng: np.random.Generator, n: int = 4, cap: float = 2.0
    ) -> "BoostRotationParams":
        """Uniform draw whose Frobenius size over the pairs stays within cap."""
        pairs = sigma_pairs(n)
        spread = cap / np.sqrt(len(pairs))
        draws = rng.uniform(-spread, spread, size=len(pairs))
        return cls.from_pairs(n, dict(zip(pairs, draws.tolist())), cap=cap)

    @property
    def n(self) -> int:
        return len(self.theta)

    def upper(self) -> np.ndarray:
        """theta^{ab} = eta^aa eta^bb theta_ab."""
        eta = np.array([-1.0] + [1.0] * (self.n - 1))
        return np.outer(eta, eta) * np.array(self.theta, dtype=float)


def mat_exp(m: CMatrix, order: int = 18) -> CMatrix:
    """Matrix exponential by scaling and squaring with a truncated Taylor series."""
    if m.rows != m.cols:
        raise ShapeMismatchError(f"mat_exp needs a square matrix, got {m.shape}")
    if m.mode is not FLOAT:
        raise ModeMismatchError("mat_exp works on float matrices")
    a = m.to_numpy()
    norm = float(np.linalg.norm(a, 1))
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5)))) if norm > 0 else 0
    a = a / 2.0**squarings
    result = np.eye(m.rows, dtype=np.complex128)
    term = np.eye(m.rows, dtype=np.complex128)
    for k in range(1, order + 1):
        term = term @ a / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return CMatrix.from_numpy(result)


def lorentz_generator(gs: GeneratorSet, side: Side, theta_upper: np.ndarray) -> CMatrix:
    """-i sum_{a<b} theta^{ab} Sigma_{X|ab}."""
    total = CMatrix.zeros(gs.n, mode=gs.mode)
    for a, b in gs.pairs:
        coefficient = complex(theta_upper[a, b])
        if coefficient != 0:
            total = total + gs.sigma[side][(a, b)].scale(-1j * coefficient)
    return total


@dataclass(frozen=True)
class LambdaTriple:
    """Lambda_L, Lambda_R, Lambda_V for one parameter set, with their inverses."""

    params: BoostRotationParams
    lam: Dict[Side, CMatrix] = field(repr=False)
    inv: Dict[Side, CMatrix] = field(repr=False)

    @property
    def lam_l(self) -> CMatrix:
        return self.lam[Side.L]

    @property
    def lam_r(self) -> CMatrix:
        return self.lam[Side.R]

    @property
    def lam_v(self) -> CMatrix:
        return self.lam[Side.V]


def build_lambdas(params: BoostRotationParams, gs: GeneratorSet) -> LambdaTriple:
    if gs.mode is not FLOAT:
        raise ModeMismatchError("Lambda matrices are built from float generators")
    if params.n != gs.n:
        raise ShapeMismatchError(f"theta is {params.n}x{params.n}, algebra has {gs.n}")
    theta = params.upper()
    lam, inv = {}, {}
    for side in SIDES:
        generator = lorentz_generator(gs, side, theta)
        lam[side] = mat_exp(generator)
        inv[side] = mat_exp(-generator)
    return LambdaTriple(params=params, lam=lam, inv=inv)


def verify_transformation_laws(
    t: LambdaTriple, gs: GeneratorSet, tol: float = 1e-9
) -> List[CheckResult]:
    """Conjugation rules of the Lambdas and the vector-spinor compatibility laws."""
    out = CheckCollector(FLOAT, tol)
    eta = gs.eta.matrix
    one = gs.identity()

    out.add(
        "transforms.lambda_conjugate",
        "Lambda_L* = Lambda_R",
        deviation(t.lam_l.conj(), t.lam_r),
    )
    for side in SIDES:
        out.add(
            f"transforms.lambda_transpose_{side.value}",
            "Lambda_X^T = eta Lambda_X^-1 eta",
            deviation(t.lam[side].T, eta @ t.inv[side] @ eta),
        )
    for side in (Side.L, Side.R):
        out.add(
            f"transforms.lambda_dagger_{side.value}",
            "Lambda_X^dagger = eta Lambda_X'^-1 eta, X' the mirror side",
            deviation(t.lam[side].dagger(), eta @ t.inv[side.mirror] @ eta),
        )
    out.add(
        "transforms.lorentz_V",
        "Lambda_V^T eta Lambda_V = eta",
        deviation(t.lam_v.T @ eta @ t.lam_v, eta),
    )
    det = complex(np.linalg.det(t.lam_v.to_numpy()))
    out.results.append(
        CheckResult.evaluate(
            "transforms.det_V",
            "det Lambda_V = 1",
            abs(det - 1.0),
            FLOAT,
            tol=tol,
            metric="abs",
        )
    )
    out.add("transforms.real_V", "Lambda_V is real", deviation(t.lam_v, t.lam_v.conj()))
    out.add_max(
        "transforms.exp_residual",
        "exp(M) exp(-M) = 1",
        (deviation(t.lam[s] @ t.inv[s], one) for s in SIDES),
    )

    lam_v = t.lam_v.to_numpy()
    inv_v = t.inv[Side.V].to_numpy()
    for side in (Side.L, Side.R):
        lam, lam_dag = t.lam[side], t.lam[side].dagger()
        raised, lowered = [], []
        for a in range(gs.n):
            rhs_up = lam_dag @ gs.gamma_upper(side, a) @ lam
            lhs_up = CMatrix.zeros(gs.n, mode=FLOAT)
            rhs_low = lam_dag @ gs.gamma[side][a] @ lam
            lhs_low = CMatrix.zeros(gs.n, mode=FLOAT)
            for b in range(gs.n):
                lhs_up = lhs_up + gs.gamma_upper(side, b).scale(complex(lam_v[a, b]))
                lhs_low = lhs_low + gs.gamma[side][b].scale(complex(inv_v[b, a]))
            raised.append(deviation(lhs_up, rhs_up))
            lowered.append(deviation(lhs_low, rhs_low))
        out.add_max(
            f"transforms.vector_law_raised_{side.value}",
            "(Lambda_V)^a_b Gamma^{X|b} = Lambda_X^dagger Gamma^{X|a} Lambda_X",
            raised,
        )
        out.add_max(
            f"transforms.vector_law_lowered_{side.value}",
            "(Lambda_V^-1)^b_a Gamma_{X|b} = Lambda_X^dagger Gamma_{X|a} Lambda_X",
            lowered,
        )
    return out.results


def random_spinor(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def linear_field(
    chi: np.ndarray, slopes: Sequence[np.ndarray]
) -> Callable[[object], object]:
    """psi(x) = (1 + x^a K_a) chi, evaluable on dual coordinates."""
    directions = [k @ chi for k in slopes]

    def psi(x):
        total = chi
        for a, d in enumerate(directions):
            total = total + x[a] * d
        return total

    return psi


def kinetic_form(gamma_up: Sequence[np.ndarray], psi, x: np.ndarray) -> complex:
    """psi^dagger Gamma^a d_a psi at x."""
    value, grads = jet(psi, x)
    return complex(
        sum(np.conj(value) @ (gamma_up[a] @ grads[a]) for a in range(len(gamma_up)))
    )


def verify_bilinear_invariants(
    t: LambdaTriple,
    gs: GeneratorSet,
    seed: int = 0,
    samples: int = 10,
    tol: float = 1e-9,
) -> List[CheckResult]:
    """Invariance of the eta-bilinears and of the kinetic form."""
    rng = np.random.default_rng(seed)
    eta = gs.eta.matrix.to_numpy()
    lam = {s: t.lam[s].to_numpy() for s in SIDES}
    lam_v = lam[Side.V]
    inv_v = t.inv[Side.V].to_numpy()

    lr, rl = [], []
    kinetic: Dict[Side, List[float]] = {Side.L: [], Side.R: []}
    for _ in range(samples):
        psi_l, psi_r = random_spinor(rng, gs.n), random_spinor(rng, gs.n)
        new_l, new_r = lam[Side.L] @ psi_l, lam[Side.R] @ psi_r
        lr.append(abs(np.conj(new_l) @ eta @ new_r - np.conj(psi_l) @ eta @ psi_r))
        rl.append(abs(np.conj(new_r) @ eta @ new_l - np.conj(psi_r) @ eta @ psi_l))

        x = rng.uniform(-1.0, 1.0, size=gs.n)
        for side in (Side.L, Side.R):
            chi = random_spinor(rng, gs.n)
            slopes = [0.5 * rng.normal(size=(gs.n, gs.n)) for _ in range(gs.n)]
            psi = linear_field(chi, slopes)
            gamma_up = [gs.gamma_upper(side, a).to_numpy() for a in range(gs.n)]

            def moved(y, psi=psi, side=side):
                return lam[side] @ psi(inv_v @ y)

            before = kinetic_form(gamma_up, psi, x)
            after = kinetic_form(gamma_up, moved, lam_v @ x)
            kinetic[side].append(abs(after - before))

    def scalar(check_id: str, reference: str, devs: List[float]) -> CheckResult:
        return CheckResult.evaluate(
            check_id, reference, max(devs, default=0.0), FLOAT, tol=tol, metric="abs"
        )

    results = [
        scalar("transforms.bilinear_LR", "psi_L^dagger eta psi_R is invariant", lr),
        scalar("transforms.bilinear_RL", "psi_R^dagger eta psi_L is invariant", rl),
    ]
    for side in (Side.L, Side.R):
        results.append(
            scalar(
                f"transforms.kinetic_{side.value}",
                "psi_X^dagger Gamma^{X|a} d_a psi_X is invariant",
                kinetic[side],
            )
        )
    logger.debug(f"Bilinear deviations: LR={max(lr, default=0.0):.3e}")
    return results


def bilinear_negative_control(
    gs: GeneratorSet,
    seed: int = 0,
    rapidity: float = 0.5,
    threshold: float = 1e-3,
    samples: int = 5,
) -> CheckResult:
    """psi_L^dagger psi_R without eta must change under a boost."""
    rng = np.random.default_rng(seed)
    boost = BoostRotationParams.from_pairs(gs.n, {(0, 1): rapidity})
    t = build_lambdas(boost, gs)
    lam_l, lam_r = t.lam_l.to_numpy(), t.lam_r.to_numpy()
    worst = 0.0
    for _ in range(samples):
        psi_l, psi_r = random_spinor(rng, gs.n), random_spinor(rng, gs.n)
        change = abs(np.conj(lam_l @ psi_l) @ (lam_r @ psi_r) - np.conj(psi_l) @ psi_r)
        worst = max(worst, float(change))
    return CheckResult.evaluate(
        "transforms.bilinear_without_eta",
        f"psi_L^dagger psi_R changes under a {rapidity} rapidity boost",
        worst,
        FLOAT,
        tol=threshold,
        expected=Expected.FAIL,
        metric="abs",
    )


def verify_group_property(
    gs: GeneratorSet,
    first: float = 0.4,
    second: float = 0.7,
    tol: float = 1e-9,
) -> List[CheckResult]:
    """Lambda(theta) Lambda(theta') = Lambda(theta + theta') along one pair."""
    out = CheckCollector(FLOAT, tol)
    for label, pair in (("rotation", (1, 2)), ("boost", (0, 1))):
        t1 = build_lambdas(BoostRotationParams.from_pairs(gs.n, {pair: first}), gs)
        t2 = build_lambdas(BoostRotationParams.from_pairs(gs.n, {pair: second}), gs)
        both = build_lambdas(
            BoostRotationParams.from_pairs(gs.n, {pair: first + second}), gs
        )
        out.add_max(
            f"transforms.group_property_{label}",
            "Lambda(theta) Lambda(theta') = Lambda(theta + theta')",
            (deviation(t1.lam[s] @ t2.lam[s], both.lam[s]) for s in SIDES),
        )
    return out.results


def run_transform_checks(
    gs: GeneratorSet,
    seed: int,
    count: int = 20,
    cap: float = 2.0,
    tol: float = 1e-9,
    samples: int = 10,
) -> List[CheckResult]:
    """All transform checks over `count` seeded parameter draws, worst case per id."""
    if gs.mode is not FLOAT:
        gs = gs.to_float()
    rng = np.random.default_rng(seed)
    collected: List[CheckResult] = []
    for k in range(count):
        params = BoostRotationParams.random(rng, gs.n, cap)
        t = build_lambdas(params, gs)
        collected.extend(verify_transformation_laws(t, gs, tol))
        collected.extend(verify_bilinear_invariants(t, gs, seed + k, samples, tol))
    collected.extend(verify_group_property(gs, tol=tol))
    collected.append(bilinear_negative_control(gs, seed))
    merged = worst_case(collected)
    logger.info(
        f"Transform checks over {count} parameter draws: "
        f"{sum(r.passed for r in merged)}/{len(merged)} pass"
    )
    return merged


def worst_case(results: Sequence[CheckResult]) -> List[CheckResult]:
    """One result per check id: a non-passing one if any, else the largest deviation."""
    chosen: Dict[str, CheckResult] = {}
    for r in results:
        current: Optional[CheckResult] = chosen.get(r.check_id)
        if current is None:
            chosen[r.check_id] = r
        elif current.passed and not r.passed:
            chosen[r.check_id] = r
        elif current.passed == r.passed and _size(r) > _size(current):
            chosen[r.check_id] = r
    return [chosen[k] for k in sorted(chosen)]


def _size(result: CheckResult) -> Fraction:
    return Fraction(result.deviation)
