"""Triple cross products, the chi structure constants and the self-duality spectrum."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from spinlink.algebra import (
    AlgebraElement,
    StructureTable,
    basis,
    conj_quat,
    element_deviation,
    eta_diagonal,
    inner,
    mul,
    quaternion_table,
    scalar_deviation,
)
from spinlink.errors import AlgebraMismatchError
from spinlink.generators import sigma_pairs
from spinlink.linalg import EXACT, CMatrix, Scalar, frobenius, rank_exact
from spinlink.models import (
    AlgebraKind,
    ArithmeticMode,
    CheckResult,
    DualityReport,
    Expected,
    Side,
)

logger = logging.getLogger(__name__)

# Eigenvalue pairs of T = lambda D T expected on each side.
EIGENVALUE_PAIRS: Dict[AlgebraKind, Dict[Side, Tuple[Fraction, Fraction]]] = {
    AlgebraKind.QUATERNION: {
        Side.L: (Fraction(1), Fraction(-1)),
        Side.R: (Fraction(1), Fraction(-1)),
    },
    AlgebraKind.OCTONION: {
        Side.L: (Fraction(1), Fraction(-1, 3)),
        Side.R: (Fraction(-1), Fraction(1, 3)),
    },
}


def triple_cross(
    side: Side, x: AlgebraElement, y: AlgebraElement, z: AlgebraElement
) -> AlgebraElement:
    """X_L or X_R: the alternating trilinear cross product, normalized by 1/6."""
    xb, yb, zb = conj_quat(x), conj_quat(y), conj_quat(z)
    if side is Side.L:
        total = (
            mul(x, mul(yb, z) - mul(zb, y))
            + mul(y, mul(zb, x) - mul(xb, z))
            + mul(z, mul(xb, y) - mul(yb, x))
        )
    elif side is Side.R:
        total = (
            mul(mul(x, yb) - mul(y, xb), z)
            + mul(mul(y, zb) - mul(z, yb), x)
            + mul(mul(z, xb) - mul(x, zb), y)
        )
    else:
        raise ValueError("Cross products exist for the L and R sides only")
    return total.scale(Scalar.one(x.mode) / 6)


def _det3(m: Sequence[Sequence[Scalar]]) -> Scalar:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _max(values, mode: ArithmeticMode):
    worst = Fraction(0) if mode is EXACT else 0.0
    for v in values:
        if v > worst:
            worst = v
    return worst


def verify_cross_properties(
    side: Side,
    table: StructureTable,
    samples: int = 100,
    seed: int = 0,
    mode: ArithmeticMode = EXACT,
    tol: float = 1e-9,
) -> List[CheckResult]:
    """Orthogonality, Pythagorean and alternation checks on random triples."""
    rng = np.random.default_rng(seed)
    triples = [
        tuple(AlgebraElement.random(table, rng, mode) for _ in range(3))
        for _ in range(samples)
    ]
    orth = []
    pyth = []
    alt = []
    zero = AlgebraElement.zero(table, mode)
    for xs in triples:
        cross = triple_cross(side, *xs)
        orth.extend(scalar_deviation(inner(cross, x), Scalar.zero(mode)) for x in xs)
        gram = [[inner(a, b) for b in xs] for a in xs]
        pyth.append(scalar_deviation(_det3(gram), inner(cross, cross)))
        x, y, _ = xs
        alt.extend(
            element_deviation(c, zero)
            for c in (
                triple_cross(side, x, x, y),
                triple_cross(side, x, y, x),
                triple_cross(side, y, x, x),
            )
        )
    tag = f"{side.value}_{table.kind.value}"
    results = [
        CheckResult.evaluate(
            f"cross.orthogonality_{tag}",
            "<X(x1,x2,x3), x_i> = 0",
            _max(orth, mode),
            mode,
            tol,
        ),
        CheckResult.evaluate(
            f"cross.pythagorean_{tag}",
            "det(<x_i,x_j>) = <X(x1,x2,x3), X(x1,x2,x3)>",
            _max(pyth, mode),
            mode,
            tol,
        ),
        CheckResult.evaluate(
            f"cross.alternating_{tag}",
            "X(x,x,y) = X(x,y,x) = X(y,x,x) = 0",
            _max(alt, mode),
            mode,
            tol,
        ),
    ]
    logger.info(f"Cross product checks {tag}: {sum(r.holds for r in results)}/3 hold")
    return results


def verify_sides_agree(
    table: StructureTable, mode: ArithmeticMode = EXACT, tol: float = 1e-9
) -> CheckResult:
    """X_L = X_R on every basis triple; expected to fail without associativity."""
    units = basis(table, mode)
    dev = _max(
        (
            element_deviation(
                triple_cross(Side.L, x, y, z), triple_cross(Side.R, x, y, z)
            )
            for x, y, z in product(units, repeat=3)
        ),
        mode,
    )
    expected = (
        Expected.HOLD if table.kind is AlgebraKind.QUATERNION else Expected.FAIL
    )
    return CheckResult.evaluate(
        f"cross.sides_agree_{table.kind.value}",
        "X_L(e_a,e_b,e_c) = X_R(e_a,e_b,e_c)",
        dev,
        mode,
        tol,
        expected=expected,
    )


@dataclass(frozen=True)
class ChiTensor:
    """chi_{X|ABCD} = i <X(e_A, e_B, e_C), e_D> as an exact rank-4 array."""

    side: Side
    algebra: AlgebraKind
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index: Tuple[int, int, int, int]) -> Scalar:
        return self.entries[index]

    def nonzero(self) -> List[Tuple[Tuple[int, ...], Scalar]]:
        return [
            (idx, self.entries[idx])
            for idx in product(range(self.n), repeat=4)
            if not self.entries[idx].is_zero()
        ]

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.entries.flat)


def build_chi(side: Side, table: StructureTable) -> ChiTensor:
    """Exact chi tensor of one side."""
    units = basis(table)
    n = table.dim
    i_unit = Scalar.imag_unit()
    entries = np.empty((n, n, n, n), dtype=object)
    for a, b, c in product(range(n), repeat=3):
        cross = triple_cross(side, units[a], units[b], units[c])
        for d in range(n):
            entries[a, b, c, d] = i_unit * inner(cross, units[d])
    logger.debug(f"chi tensor built for side {side.value}, {table.kind.value}")
    return ChiTensor(side=side, algebra=table.kind, entries=entries)


def build_epsilon4(
    table: Optional[StructureTable] = None, side: Side = Side.L
) -> ChiTensor:
    """epsilon_abcd = i <X(e_a, e_b, e_c), e_d> on the quaternions."""
    table = table or quaternion_table()
    if table.kind is not AlgebraKind.QUATERNION:
        raise AlgebraMismatchError("epsilon_abcd is defined on the quaternions")
    return build_chi(side, table)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def _antisymmetry_deviation(chi: ChiTensor, slots: Sequence[int]):
    """Largest |chi + chi with two of the given slots swapped|^2."""
    worst = Fraction(0)
    swaps = [(slots[i], slots[j]) for i in range(len(slots)) for j in range(i)]
    for idx in product(range(chi.n), repeat=4):
        for p, q in swaps:
            swapped = list(idx)
            swapped[p], swapped[q] = swapped[q], swapped[p]
            d = (chi[idx] + chi[tuple(swapped)]).abs2()
            if d > worst:
                worst = d
    return worst


def verify_chi_properties(table: StructureTable) -> List[CheckResult]:
    """Antisymmetry, reality and side comparison of the chi tensors."""
    quaternion = table.kind is AlgebraKind.QUATERNION
    chis = {side: build_chi(side, table) for side in (Side.L, Side.R)}
    results = []
    for side, chi in chis.items():
        tag = f"{side.value}_{table.kind.value}"
        results.append(
            CheckResult.evaluate(
                f"cross.chi_antisymmetric_{tag}",
                "chi_{X|ABCD} is totally antisymmetric",
                _antisymmetry_deviation(chi, (0, 1, 2, 3)),
                EXACT,
            )
        )
        imaginary = sum((v.im * v.im for v in chi.entries.flat), Fraction(0))
        results.append(
            CheckResult.evaluate(
                f"cross.chi_real_{tag}",
                "chi_{X|ABCD} has real entries",
                imaginary,
                EXACT,
                expected=Expected.HOLD if quaternion else Expected.RECORD,
            )
        )
    diff = sum(
        (
            (chis[Side.L][idx] - chis[Side.R][idx]).abs2()
            for idx in product(range(table.dim), repeat=4)
        ),
        Fraction(0),
    )
    results.append(
        CheckResult.evaluate(
            f"cross.chi_sides_equal_{table.kind.value}",
            "chi_{L|ABCD} = chi_{R|ABCD}",
            diff,
            EXACT,
            expected=Expected.HOLD if quaternion else Expected.FAIL,
        )
    )
    if quaternion:
        eps = chis[Side.L]
        orientation = eps[(0, 1, 2, 3)]
        dev = Fraction(0)
        for idx in product(range(4), repeat=4):
            target = Scalar.zero()
            if len(set(idx)) == 4:
                target = orientation * permutation_sign(idx)
            dev += (eps[idx] - target).abs2()
        results.append(
            CheckResult.evaluate(
                "cross.epsilon_levi_civita",
                f"epsilon_abcd = ({orientation}) sgn(abcd)",
                dev + (orientation.abs2() - 1) ** 2,
                EXACT,
            )
        )
    return results


def duality_operator(chi: ChiTensor) -> CMatrix:
    """Matrix of T_AB -> (i/2) chi_ABCD T^CD on the pairs A < B."""
    eta = eta_diagonal(chi.n)
    pairs = sigma_pairs(chi.n)
    i_unit = Scalar.imag_unit()
    entries = {}
    for row, (a, b) in enumerate(pairs):
        for col, (c, d) in enumerate(pairs):
            value = chi[(a, b, c, d)]
            if not value.is_zero():
                entries[(row, col)] = i_unit * value * (eta[c] * eta[d])
    size = len(pairs)
    return CMatrix.from_entries((size, size), entries)


def _annihilator(d: CMatrix, pair: Tuple[Fraction, Fraction]) -> CMatrix:
    """(l1 D - 1)(l2 D - 1)."""
    one = CMatrix.identity(d.rows)
    return (d.scale(pair[0]) - one) @ (d.scale(pair[1]) - one)


def multiplicity(d: CMatrix, eigenvalue: Fraction) -> int:
    """Dimension of the solution space of T = eigenvalue D T."""
    return d.rows - rank_exact(d.scale(eigenvalue) - CMatrix.identity(d.rows))


def duality_spectrum(side: Side, table: StructureTable) -> DualityReport:
    """Test the duality operator of one side against its own eigenvalue pair."""
    chi = build_chi(side, table)
    d = duality_operator(chi)
    own = EIGENVALUE_PAIRS[table.kind][side]
    other = EIGENVALUE_PAIRS[table.kind][side.mirror]
    residual = frobenius(_annihilator(d, own))
    # Only the own pair may annihilate D.
    exclusive = other == own or frobenius(_annihilator(d, other)) != 0
    mults = [multiplicity(d, lam) for lam in own]
    holds = residual == 0 and exclusive and sum(mults) == d.rows
    logger.info(
        f"Duality {side.value}/{table.kind.value}: pair {own}, "
        f"multiplicities {mults}, residual {residual}"
    )
    return DualityReport(
        side=side,
        algebra=table.kind,
        eigenvalues=[str(lam) for lam in own],
        multiplicities=mults,
        minimal_polynomial_residual=str(residual),
        holds=holds,
    )


def verify_duality(
    table: StructureTable,
) -> Tuple[List[DualityReport], List[CheckResult]]:
    """Spectra of both sides plus the checks the verify command reports."""
    reports = [duality_spectrum(side, table) for side in (Side.L, Side.R)]
    kind = table.kind.value
    results = []
    for report in reports:
        results.append(
            CheckResult.from_outcome(
                f"duality.minimal_polynomial_{report.side.value}_{kind}",
                f"(l1 D - 1)(l2 D - 1) = 0 for (l1, l2) = "
                f"({', '.join(report.eigenvalues)})",
                report.holds,
                report.minimal_polynomial_residual,
                EXACT,
            )
        )
        results.append(
            CheckResult.from_outcome(
                f"duality.multiplicities_{report.side.value}_{kind}",
                f"eigenspace dimensions {report.multiplicities} sum to "
                f"{len(sigma_pairs(table.dim))}",
                sum(report.multiplicities) == len(sigma_pairs(table.dim)),
                str(sum(report.multiplicities) - len(sigma_pairs(table.dim))),
                EXACT,
            )
        )
    if table.kind is AlgebraKind.OCTONION:
        left, right = reports
        differ = left.eigenvalues != right.eigenvalues
        results.append(
            CheckResult.from_outcome(
                f"duality.sides_opposite_{kind}",
                "spectrum(D_R) = -spectrum(D_L)",
                differ
                and sorted(Fraction(v) for v in left.eigenvalues)
                == sorted(-Fraction(v) for v in right.eigenvalues),
                "0" if differ else "1",
                EXACT,
            )
        )
    return reports, results
