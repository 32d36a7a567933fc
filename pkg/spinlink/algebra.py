"""Composition-algebra arithmetic for the complexified quaternions and octonions.

Elements are stored over the internal basis (1, e_1, ..., e_{n-1}); the basis used
by the generator formulas is e_0 = i*1, e_I = e_I, reachable through `basis()`.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from spinlink.errors import AlgebraMismatchError, ModeMismatchError, TableError
from spinlink.errors import TableValidationError
from spinlink.linalg import EXACT, FLOAT, Number, Scalar
from spinlink.models import AlgebraKind, ArithmeticMode, CheckResult, Expected

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int, int]

QUATERNION_TRIPLES: Tuple[Triple, ...] = ((1, 2, 3, 1),)

COEFFICIENT_RANGE = (-3, 3)


@dataclass(frozen=True)
class StructureTable:
    """Multiplication table of the units: products[p][q] = (sign, r) for u_p u_q."""

    dim: int
    products: Tuple[Tuple[Tuple[int, int], ...], ...]
    certified: bool = False

    @classmethod
    def from_triples(cls, dim: int, triples: Iterable[Triple]) -> "StructureTable":
        """Close signed triples under cyclic order and antisymmetry."""
        if dim not in (4, 8):
            raise TableError(f"Unsupported algebra dimension {dim}")
        imaginary: Dict[Tuple[int, int], Tuple[int, int]] = {}

        def put(i: int, j: int, sign: int, k: int) -> None:
            known = imaginary.get((i, j))
            if known is not None and known != (sign, k):
                raise TableError(
                    f"Contradictory products for e_{i} e_{j}: {known} vs {(sign, k)}"
                )
            imaginary[(i, j)] = (sign, k)

        for triple in triples:
            i, j, k, sign = triple
            if sign not in (1, -1):
                raise TableError(f"Sign must be +1 or -1 in {triple}")
            if len({i, j, k}) != 3 or not all(1 <= x < dim for x in (i, j, k)):
                raise TableError(f"Invalid indices in {triple} for dimension {dim}")
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                put(a, b, sign, c)
                put(b, a, -sign, c)

        rows = []
        for p in range(dim):
            row = []
            for q in range(dim):
                if p == 0:
                    row.append((1, q))
                elif q == 0:
                    row.append((1, p))
                elif p == q:
                    row.append((-1, 0))
                elif (p, q) in imaginary:
                    row.append(imaginary[(p, q)])
                else:
                    raise TableError(f"Table leaves the product e_{p} e_{q} undefined")
            rows.append(tuple(row))
        return cls(dim=dim, products=tuple(rows))

    @property
    def kind(self) -> AlgebraKind:
        return AlgebraKind.from_dim(self.dim)

    def unit_product(self, p: int, q: int) -> Tuple[int, int]:
        return self.products[p][q]

    def triples(self) -> List[Triple]:
        """Canonical positive triples (I < J, e_I e_J = +e_K, I < K)."""
        found = set()
        for i in range(1, self.dim):
            for j in range(1, self.dim):
                if i == j:
                    continue
                sign, k = self.products[i][j]
                if sign == 1:
                    cycle = [(i, j, k), (j, k, i), (k, i, j)]
                    found.add(min(cycle))
        return [(i, j, k, 1) for i, j, k in sorted(found)]

    def to_text(self) -> str:
        lines = [f"# {self.kind.value} table: 'I J K sign' means e_I e_J = sign e_K"]
        lines.extend(f"{i} {j} {k} {sign:+d}" for i, j, k, sign in self.triples())
        return "\n".join(lines) + "\n"

    def same_algebra(self, other: "StructureTable") -> bool:
        if self is other:
            return True
        return self.dim == other.dim and self.products == other.products

    def certify(self) -> "StructureTable":
        return replace(self, certified=True)


def cayley_dickson(table: StructureTable) -> StructureTable:
    """Double a table with (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))."""
    n = table.dim

    def conj_sign(k: int) -> int:
        return 1 if k == 0 else -1

    def unit(p: int, q: int) -> Tuple[int, int]:
        if p < n and q < n:
            return table.unit_product(p, q)
        if p < n <= q:
            sign, r = table.unit_product(q - n, p)
            return sign, r + n
        if q < n <= p:
            sign, r = table.unit_product(p - n, q)
            return sign * conj_sign(q), r + n
        sign, r = table.unit_product(q - n, p - n)
        return -conj_sign(q - n) * sign, r

    triples = []
    for i in range(1, 2 * n):
        for j in range(i + 1, 2 * n):
            sign, k = unit(i, j)
            triples.append((i, j, k, sign))
    return StructureTable.from_triples(2 * n, triples)


@lru_cache(maxsize=None)
def quaternion_table() -> StructureTable:
    """Default quaternion convention, certified by the axiom suite once per process."""
    return validate_table(StructureTable.from_triples(4, QUATERNION_TRIPLES))


@lru_cache(maxsize=None)
def octonion_table() -> StructureTable:
    """Default octonion convention: Cayley-Dickson double of the quaternions."""
    return validate_table(cayley_dickson(quaternion_table()))


def default_table(kind: AlgebraKind) -> StructureTable:
    return quaternion_table() if kind is AlgebraKind.QUATERNION else octonion_table()


def parse_table(text: str) -> StructureTable:
    """Parse `I J K sign` lines (1-based, `#` comments) into an uncertified table."""
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise TableError(f"Line {lineno}: expected 'I J K sign', got {raw!r}")
        try:
            triples.append(tuple(int(p) for p in parts))
        except ValueError as e:
            raise TableError(f"Line {lineno}: {e}") from e
    if not triples:
        raise TableError("Structure table is empty")
    top = max(max(t[:3]) for t in triples)
    dim = 4 if top <= 3 else 8
    return StructureTable.from_triples(dim, triples)


def load_table(path: Union[str, Path]) -> StructureTable:
    """Read a structure table file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise TableError(f"Cannot read structure table {path}: {e}") from e
    return parse_table(text)


@dataclass(frozen=True)
class AlgebraElement:
    """Element of C⊗H or C⊗O as coefficients over (1, e_1, ..., e_{n-1})."""

    coeffs: Tuple[Scalar, ...]
    table: StructureTable

    def __post_init__(self):
        if len(self.coeffs) != self.table.dim:
            raise AlgebraMismatchError(
                f"Expected {self.table.dim} coefficients, got {len(self.coeffs)}"
            )
        modes = {c.mode for c in self.coeffs}
        if len(modes) != 1:
            raise ModeMismatchError("Mixed arithmetic modes in one element")

    @classmethod
    def from_values(
        cls,
        table: StructureTable,
        values: Sequence[Union[Scalar, Number]],
        mode: ArithmeticMode = EXACT,
    ) -> "AlgebraElement":
        return cls(tuple(Scalar.of(v, mode) for v in values), table)

    @classmethod
    def zero(
        cls, table: StructureTable, mode: ArithmeticMode = EXACT
    ) -> "AlgebraElement":
        return cls.from_values(table, [0] * table.dim, mode)

    @classmethod
    def unit(cls, table: StructureTable, k: int, mode: ArithmeticMode = EXACT):
        """Internal basis unit u_k (u_0 = 1)."""
        values = [0] * table.dim
        values[k] = 1
        return cls.from_values(table, values, mode)

    @classmethod
    def basis(cls, table: StructureTable, a: int, mode: ArithmeticMode = EXACT):
        """Basis element e_a with e_0 = i*1."""
        if a == 0:
            values: List[Union[Scalar, int]] = [0] * table.dim
            values[0] = Scalar.imag_unit(mode)
            return cls.from_values(table, values, mode)
        return cls.unit(table, a, mode)

    @classmethod
    def random(
        cls,
        table: StructureTable,
        rng: np.random.Generator,
        mode: ArithmeticMode = EXACT,
    ) -> "AlgebraElement":
        """Element with integer real and imaginary parts drawn from -3..3."""
        low, high = COEFFICIENT_RANGE
        draws = rng.integers(low, high + 1, size=(table.dim, 2))
        if mode is FLOAT:
            coeffs = [Scalar.floating(complex(int(re), int(im))) for re, im in draws]
        else:
            coeffs = [Scalar.exact(int(re), int(im)) for re, im in draws]
        return cls(tuple(coeffs), table)

    @property
    def mode(self) -> ArithmeticMode:
        return self.coeffs[0].mode

    @property
    def dim(self) -> int:
        return self.table.dim

    @property
    def algebra(self) -> AlgebraKind:
        return self.table.kind

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"Expected AlgebraElement, got {type(other).__name__}")
        if not self.table.same_algebra(other.table):
            raise AlgebraMismatchError("Elements belong to different algebras")
        if self.mode is not other.mode:
            raise ModeMismatchError("Elements use different arithmetic modes")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(
            tuple(x + y for x, y in zip(self.coeffs, other.coeffs)), self.table
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(
            tuple(x - y for x, y in zip(self.coeffs, other.coeffs)), self.table
        )

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(tuple(-x for x in self.coeffs), self.table)

    def scale(self, factor: Union[Scalar, Number]) -> "AlgebraElement":
        s = Scalar.of(factor, self.mode)
        return AlgebraElement(tuple(s * x for x in self.coeffs), self.table)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return mul(self, other)

    def conj_complex(self) -> "AlgebraElement":
        return conj_complex(self)

    def conj_quat(self) -> "AlgebraElement":
        return conj_quat(self)

    def real_part(self) -> Scalar:
        """Coefficient of the unit 1."""
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def basis_coords(self) -> Tuple[Scalar, ...]:
        """Coefficients c^a over e_a = (i, e_I)."""
        minus_i = -Scalar.imag_unit(self.mode)
        return (self.coeffs[0] * minus_i,) + self.coeffs[1:]

    @classmethod
    def from_basis_coords(
        cls,
        table: StructureTable,
        coords: Sequence[Union[Scalar, Number]],
        mode: ArithmeticMode = EXACT,
    ) -> "AlgebraElement":
        values = [Scalar.of(c, mode) for c in coords]
        values[0] = values[0] * Scalar.imag_unit(mode)
        return cls(tuple(values), table)

    def __str__(self) -> str:
        terms = [
            f"({c})" + ("" if k == 0 else f"e{k}")
            for k, c in enumerate(self.coeffs)
            if not c.is_zero()
        ]
        return " + ".join(terms) if terms else "0"


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear product through the structure table."""
    x._check(y)
    table = x.table
    acc = [Scalar.zero(x.mode)] * table.dim
    y_terms = [(q, c) for q, c in enumerate(y.coeffs) if not c.is_zero()]
    for p, a in enumerate(x.coeffs):
        if a.is_zero():
            continue
        row = table.products[p]
        for q, b in y_terms:
            sign, r = row[q]
            term = a * b
            acc[r] = acc[r] + term if sign > 0 else acc[r] - term
    return AlgebraElement(tuple(acc), table)


def conj_complex(x: AlgebraElement) -> AlgebraElement:
    """Complex conjugation of the internal coefficients."""
    return AlgebraElement(tuple(c.conj() for c in x.coeffs), x.table)


def conj_quat(x: AlgebraElement) -> AlgebraElement:
    """Quaternionic (octonionic) conjugation: negate the imaginary units."""
    return AlgebraElement((x.coeffs[0],) + tuple(-c for c in x.coeffs[1:]), x.table)


def inner(x: AlgebraElement, y: AlgebraElement) -> Scalar:
    """Complex bilinear inner product with 2<x,y> = x conj(y) + y conj(x)."""
    total = mul(x, conj_quat(y)) + mul(y, conj_quat(x))
    return total.real_part() / 2


def associator(
    x: AlgebraElement, y: AlgebraElement, z: AlgebraElement
) -> AlgebraElement:
    """(xy)z - x(yz)."""
    return mul(mul(x, y), z) - mul(x, mul(y, z))


def basis(table: StructureTable, mode: ArithmeticMode = EXACT) -> List[AlgebraElement]:
    """Basis e_a = (i, e_1, ..., e_{n-1})."""
    return [AlgebraElement.basis(table, a, mode) for a in range(table.dim)]


def eta_diagonal(dim: int) -> Tuple[int, ...]:
    """Diagonal of the Minkowski metric (-1, +1, ..., +1)."""
    return (-1,) + (1,) * (dim - 1)


def element_deviation(x: AlgebraElement, y: AlgebraElement):
    """Squared coefficient distance (exact) or Euclidean distance (float)."""
    squares = [c.abs2() for c in (x - y).coeffs]
    if x.mode is FLOAT:
        return float(np.sqrt(sum(squares)))
    return sum(squares, Fraction(0))


def scalar_deviation(a: Scalar, b: Scalar):
    d = (a - b).abs2()
    if a.mode is FLOAT:
        return float(np.sqrt(d))
    return d


def _max_deviation(values: Iterable, mode: ArithmeticMode):
    best = Fraction(0) if mode is EXACT else 0.0
    for v in values:
        if v > best:
            best = v
    return best


def _argument_sets(
    table: StructureTable,
    arity: int,
    samples: int,
    rng: np.random.Generator,
    mode: ArithmeticMode,
) -> List[Tuple[AlgebraElement, ...]]:
    """Every tuple of basis elements followed by `samples` random tuples."""
    units = basis(table, mode)
    sets = [tuple(args) for args in product(units, repeat=arity)]
    for _ in range(samples):
        draw = [AlgebraElement.random(table, rng, mode) for _ in range(arity)]
        sets.append(tuple(draw))
    return sets


def _axiom_definitions(table: StructureTable, mode: ArithmeticMode):
    units = basis(table, mode)
    eta = eta_diagonal(table.dim)

    def ip_sym(x, y):
        return scalar_deviation(inner(x, y), inner(y, x))

    def ip_conj(x, y):
        return scalar_deviation(inner(x, y), inner(conj_quat(x), conj_quat(y)))

    def ip_move_left(x, y, z):
        return scalar_deviation(inner(x, mul(y, z)), inner(mul(conj_quat(y), x), z))

    def ip_move_right(x, y, z):
        return scalar_deviation(inner(mul(x, y), z), inner(x, mul(z, conj_quat(y))))

    def ip_sum_left(x, y, z):
        lhs = mul(x, mul(conj_quat(y), z)) + mul(y, mul(conj_quat(x), z))
        return element_deviation(lhs, z.scale(inner(x, y) * 2))

    def ip_sum_left_regrouped(x, y, z):
        lhs = mul(x, mul(conj_quat(y), z)) + mul(mul(y, conj_quat(x)), z)
        return element_deviation(lhs, z.scale(inner(x, y) * 2))

    def ip_sum_right(x, y, z):
        lhs = mul(mul(x, conj_quat(y)), z) + mul(mul(x, conj_quat(z)), y)
        return element_deviation(lhs, x.scale(inner(y, z) * 2))

    def completeness(x, y):
        total = Scalar.zero(mode)
        for a, e in enumerate(units):
            total = total + inner(x, e) * inner(e.scale(eta[a]), y)
        return scalar_deviation(total, inner(x, y))

    hold, record = Expected.HOLD, Expected.RECORD
    return [
        ("axioms.ip_sym", "<x,y> = <y,x>", 2, ip_sym, hold),
        ("axioms.ip_conj", "<x,y> = <conj x, conj y>", 2, ip_conj, hold),
        ("axioms.ip_move_left", "<x,yz> = <conj(y) x, z>", 3, ip_move_left, hold),
        ("axioms.ip_move_right", "<xy,z> = <x, z conj(y)>", 3, ip_move_right, hold),
        (
            "axioms.ip_sum_left",
            "x(conj(y) z) + y(conj(x) z) = 2<x,y> z",
            3,
            ip_sum_left,
            hold,
        ),
        (
            "axioms.ip_sum_left_regrouped",
            "x(conj(y) z) + (y conj(x)) z = 2<x,y> z",
            3,
            ip_sum_left_regrouped,
            record,
        ),
        (
            "axioms.ip_sum_right",
            "(x conj(y)) z + (x conj(z)) y = 2<y,z> x",
            3,
            ip_sum_right,
            hold,
        ),
        ("axioms.completeness", "<x,e_a><e^a,y> = <x,y>", 2, completeness, hold),
    ]


def check_axiom_suite(
    table: StructureTable,
    samples: int = 100,
    seed: int = 0,
    mode: ArithmeticMode = EXACT,
    tol: float = 1e-9,
) -> List[CheckResult]:
    """Evaluate the composition-algebra identities over basis and random arguments."""
    rng = np.random.default_rng(seed)
    pairs = _argument_sets(table, 2, samples, rng, mode)
    triples = _argument_sets(table, 3, samples, rng, mode)
    results = []
    for check_id, reference, arity, residual, expected in _axiom_definitions(
        table, mode
    ):
        arguments = pairs if arity == 2 else triples
        dev = _max_deviation((residual(*args) for args in arguments), mode)
        result = CheckResult.evaluate(
            check_id, reference, dev, mode, tol=tol, expected=expected
        )
        logger.debug(
            f"{check_id}: deviation {result.deviation} over {len(arguments)} cases"
        )
        results.append(result)
    logger.info(
        f"Axiom suite for {table.kind.value}: "
        f"{sum(r.holds for r in results)}/{len(results)} identities hold"
    )
    return results


def check_algebra_structure(
    table: StructureTable,
    samples: int = 100,
    seed: int = 0,
    mode: ArithmeticMode = EXACT,
    tol: float = 1e-9,
) -> List[CheckResult]:
    """Gram matrix, conjugation and (non)associativity checks."""
    rng = np.random.default_rng(seed + 1)
    units = basis(table, mode)
    eta = eta_diagonal(table.dim)
    zero = AlgebraElement.zero(table, mode)

    gram = _max_deviation(
        (
            scalar_deviation(
                inner(units[a], units[b]), Scalar.of(eta[a] if a == b else 0, mode)
            )
            for a in range(table.dim)
            for b in range(table.dim)
        ),
        mode,
    )

    randoms = [AlgebraElement.random(table, rng, mode) for _ in range(samples)]
    conj_dev = _max_deviation(
        [
            element_deviation(conj_complex(conj_complex(x)), x) for x in randoms
        ]
        + [element_deviation(conj_quat(conj_quat(x)), x) for x in randoms]
        + [
            element_deviation(conj_quat(conj_complex(x)), conj_complex(conj_quat(x)))
            for x in randoms
        ]
        + [element_deviation(conj_quat(conj_complex(e)), -e) for e in units],
        mode,
    )

    pairs = list(product(units, repeat=2)) + [
        (randoms[k], randoms[(k + 1) % samples]) for k in range(samples)
    ]
    alternative = _max_deviation(
        (
            max(
                element_deviation(associator(x, x, y), zero),
                element_deviation(associator(x, y, y), zero),
            )
            for x, y in pairs
        ),
        mode,
    )
    associative = _max_deviation(
        (
            element_deviation(associator(x, y, z), zero)
            for x, y, z in product(units, repeat=3)
        ),
        mode,
    )
    assoc_expected = (
        Expected.HOLD if table.kind is AlgebraKind.QUATERNION else Expected.FAIL
    )
    return [
        CheckResult.evaluate("algebra.gram_eta", "<e_a,e_b> = eta_ab", gram, mode, tol),
        CheckResult.evaluate(
            "algebra.conjugations",
            "conjugations are commuting involutions, conj(e_a)* = -e_a",
            conj_dev,
            mode,
            tol,
        ),
        CheckResult.evaluate(
            "algebra.alternative", "(x,x,y) = (x,y,y) = 0", alternative, mode, tol
        ),
        CheckResult.evaluate(
            "algebra.associative",
            "(e_a e_b) e_c = e_a (e_b e_c)",
            associative,
            mode,
            tol,
            expected=assoc_expected,
        ),
    ]


def validate_table(
    table: StructureTable, samples: int = 100, seed: int = 0
) -> StructureTable:
    """Certify a table by the exact axiom suite, raising if any identity fails."""
    results = check_axiom_suite(table, samples=samples, seed=seed)
    failed = [r for r in results if r.expected is Expected.HOLD and not r.holds]
    if failed:
        ids = ", ".join(r.check_id for r in failed)
        logger.error(f"Structure table rejected: {ids}")
        raise TableValidationError(
            f"Structure table fails the axiom suite: {ids}", failed
        )
    logger.info(f"Structure table of dimension {table.dim} certified")
    return table.certify()


def ensure_certified(
    table: Optional[StructureTable],
    kind: AlgebraKind,
    samples: int = 100,
    seed: int = 0,
) -> StructureTable:
    """Default table for `kind`, or the given table after certification."""
    if table is None:
        return default_table(kind)
    if table.certified:
        return table
    return validate_table(table, samples=samples, seed=seed)
