"""Exact and float complex scalars and the small dense matrix kernel built on them."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from spinlink.errors import ModeMismatchError, ShapeMismatchError
from spinlink.models import ArithmeticMode

logger = logging.getLogger(__name__)

EXACT = ArithmeticMode.EXACT
FLOAT = ArithmeticMode.FLOAT

Number = Union[int, Fraction, float, complex]


@dataclass(frozen=True, slots=True)
class Scalar:
    """Complex number re + i*im, exact (Fraction parts) or float."""

    re: Union[Fraction, float]
    im: Union[Fraction, float]
    mode: ArithmeticMode = EXACT

    @classmethod
    def exact(
        cls, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0
    ) -> "Scalar":
        if isinstance(re, float) or isinstance(im, float):
            raise ModeMismatchError("Exact scalars take integer or Fraction parts only")
        return cls(Fraction(re), Fraction(im), EXACT)

    @classmethod
    def floating(cls, value: Number = 0.0, im: float = 0.0) -> "Scalar":
        z = complex(value) + 1j * float(im)
        return cls(z.real, z.imag, FLOAT)

    @classmethod
    def of(cls, value: Union["Scalar", Number], mode: ArithmeticMode) -> "Scalar":
        """Convert a plain number to a scalar of the given mode."""
        if isinstance(value, Scalar):
            if value.mode is not mode:
                raise ModeMismatchError(
                    f"Cannot combine {value.mode.value} and {mode.value} scalars"
                )
            return value
        if mode is FLOAT:
            return cls.floating(value)
        if isinstance(value, (int, Fraction)):
            return cls.exact(value)
        raise ModeMismatchError(f"Cannot use {value!r} in exact arithmetic")

    @classmethod
    def zero(cls, mode: ArithmeticMode = EXACT) -> "Scalar":
        return cls.of(0, mode)

    @classmethod
    def one(cls, mode: ArithmeticMode = EXACT) -> "Scalar":
        return cls.of(1, mode)

    @classmethod
    def imag_unit(cls, mode: ArithmeticMode = EXACT) -> "Scalar":
        if mode is FLOAT:
            return cls.floating(1j)
        return cls.exact(0, 1)

    def _coerce(self, other) -> "Scalar":
        return Scalar.of(other, self.mode)

    def __add__(self, other) -> "Scalar":
        o = self._coerce(other)
        return Scalar(self.re + o.re, self.im + o.im, self.mode)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        o = self._coerce(other)
        return Scalar(self.re - o.re, self.im - o.im, self.mode)

    def __rsub__(self, other) -> "Scalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        o = self._coerce(other)
        return Scalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.mode,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        o = self._coerce(other)
        den = o.abs2()
        if den == 0:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
            self.mode,
        )

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im, self.mode)

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im, self.mode)

    def abs2(self) -> Union[Fraction, float]:
        """Squared modulus, exact in exact mode."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        if self.mode is EXACT:
            return f"{self.re}{sign}{abs(self.im)} i"
        return f"{self.re:.12g}{sign}{abs(self.im):.12g} i"


def _object_grid(values: Sequence[Scalar], shape: Tuple[int, int]) -> np.ndarray:
    grid = np.empty(len(values), dtype=object)
    for k, v in enumerate(values):
        grid[k] = v
    return grid.reshape(shape)


class CMatrix:
    """Dense complex matrix over a numpy carrier.

    Exact matrices hold `Scalar` objects in an object array; float matrices hold a
    complex128 array. All operations return new matrices.
    """

    __slots__ = ("data", "mode")

    def __init__(self, data: np.ndarray, mode: ArithmeticMode = EXACT):
        if data.ndim != 2:
            raise ShapeMismatchError(f"Matrix data must be 2-D, got shape {data.shape}")
        if mode is FLOAT and data.dtype != np.complex128:
            data = data.astype(np.complex128)
        self.data = data
        self.mode = mode

    @classmethod
    def zeros(
        cls, rows: int, cols: Optional[int] = None, mode: ArithmeticMode = EXACT
    ) -> "CMatrix":
        cols = rows if cols is None else cols
        if mode is FLOAT:
            return cls(np.zeros((rows, cols), dtype=np.complex128), FLOAT)
        return cls(_object_grid([Scalar.zero()] * (rows * cols), (rows, cols)), EXACT)

    @classmethod
    def identity(cls, n: int, mode: ArithmeticMode = EXACT) -> "CMatrix":
        return cls.from_entries((n, n), {(k, k): 1 for k in range(n)}, mode)

    @classmethod
    def diagonal(
        cls, values: Sequence[Number], mode: ArithmeticMode = EXACT
    ) -> "CMatrix":
        n = len(values)
        entries = {(k, k): v for k, v in enumerate(values)}
        return cls.from_entries((n, n), entries, mode)

    @classmethod
    def from_entries(
        cls,
        shape: Tuple[int, int],
        entries: Dict[Tuple[int, int], Union[Scalar, Number]],
        mode: ArithmeticMode = EXACT,
    ) -> "CMatrix":
        """Matrix with the given nonzero entries."""
        m = cls.zeros(shape[0], shape[1], mode)
        for (i, j), value in entries.items():
            s = Scalar.of(value, mode)
            m.data[i, j] = s.to_complex() if mode is FLOAT else s
        return m

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[Union[Scalar, Number]]],
        mode: ArithmeticMode = EXACT,
    ) -> "CMatrix":
        shape = (len(rows), len(rows[0]) if rows else 0)
        flat = [Scalar.of(v, mode) for row in rows for v in row]
        if mode is FLOAT:
            return cls(np.array([s.to_complex() for s in flat]).reshape(shape), FLOAT)
        return cls(_object_grid(flat, shape), EXACT)

    @classmethod
    def from_numpy(cls, array: np.ndarray) -> "CMatrix":
        return cls(np.asarray(array, dtype=np.complex128), FLOAT)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        value = self.data[index]
        if self.mode is FLOAT:
            return Scalar.floating(complex(value))
        return value

    def nonzero_entries(self) -> Iterator[Tuple[Tuple[int, int], Scalar]]:
        for i in range(self.rows):
            for j in range(self.cols):
                s = self[i, j]
                if not s.is_zero():
                    yield (i, j), s

    def _check_same(self, other: "CMatrix") -> None:
        if not isinstance(other, CMatrix):
            raise TypeError(f"Expected CMatrix, got {type(other).__name__}")
        if other.mode is not self.mode:
            raise ModeMismatchError(
                f"Cannot combine {self.mode.value} and {other.mode.value} matrices"
            )
        if other.shape != self.shape:
            raise ShapeMismatchError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def _elementwise(self, other: "CMatrix", op) -> "CMatrix":
        self._check_same(other)
        if self.mode is FLOAT:
            return CMatrix(op(self.data, other.data), FLOAT)
        values = [op(x, y) for x, y in zip(self.data.flat, other.data.flat)]
        return CMatrix(_object_grid(values, self.shape), EXACT)

    def __add__(self, other: "CMatrix") -> "CMatrix":
        return self._elementwise(other, lambda x, y: x + y)

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        return self._elementwise(other, lambda x, y: x - y)

    def __neg__(self) -> "CMatrix":
        return self.scale(-1)

    def scale(self, factor: Union[Scalar, Number]) -> "CMatrix":
        s = Scalar.of(factor, self.mode)
        if self.mode is FLOAT:
            return CMatrix(self.data * s.to_complex(), FLOAT)
        values = [s * x if not x.is_zero() else x for x in self.data.flat]
        return CMatrix(_object_grid(values, self.shape), EXACT)

    def __mul__(self, factor) -> "CMatrix":
        if isinstance(factor, CMatrix):
            raise TypeError("Use @ for matrix products")
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        if not isinstance(other, CMatrix):
            return NotImplemented
        if other.mode is not self.mode:
            raise ModeMismatchError(
                f"Cannot multiply {self.mode.value} and {other.mode.value} matrices"
            )
        if self.cols != other.rows:
            raise ShapeMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        if self.mode is FLOAT:
            return CMatrix(self.data @ other.data, FLOAT)
        # Generator matrices are sparse; only nonzero products are formed.
        zero = Scalar.zero()
        right_rows = [
            [(j, b) for j, b in enumerate(other.data[k]) if not b.is_zero()]
            for k in range(other.rows)
        ]
        values: List[Scalar] = []
        for i in range(self.rows):
            acc = [zero] * other.cols
            for k in range(self.cols):
                a = self.data[i, k]
                if a.is_zero():
                    continue
                for j, b in right_rows[k]:
                    acc[j] = acc[j] + a * b
            values.extend(acc)
        return CMatrix(_object_grid(values, (self.rows, other.cols)), EXACT)

    def transpose(self) -> "CMatrix":
        return CMatrix(self.data.T.copy(), self.mode)

    @property
    def T(self) -> "CMatrix":
        return self.transpose()

    def conj(self) -> "CMatrix":
        if self.mode is FLOAT:
            return CMatrix(np.conj(self.data), FLOAT)
        values = [x.conj() for x in self.data.flat]
        return CMatrix(_object_grid(values, self.shape), EXACT)

    def dagger(self) -> "CMatrix":
        return self.conj().transpose()

    def trace(self) -> Scalar:
        total = Scalar.zero(self.mode)
        for k in range(min(self.shape)):
            total = total + self[k, k]
        return total

    def is_zero(self) -> bool:
        if self.mode is FLOAT:
            return not np.any(self.data)
        return all(x.is_zero() for x in self.data.flat)

    def to_numpy(self) -> np.ndarray:
        if self.mode is FLOAT:
            return self.data.copy()
        return np.array([x.to_complex() for x in self.data.flat]).reshape(self.shape)

    def to_float(self) -> "CMatrix":
        return CMatrix(self.to_numpy(), FLOAT)

    def to_strings(self) -> List[List[str]]:
        """Entry strings "p/q+r/s i", row by row."""
        return [[str(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMatrix) or other.shape != self.shape:
            return False
        if other.mode is not self.mode:
            return False
        if self.mode is FLOAT:
            return bool(np.array_equal(self.data, other.data))
        return all(x == y for x, y in zip(self.data.flat, other.data.flat))

    __hash__ = None

    def __repr__(self) -> str:
        return f"CMatrix({self.mode.value}, {self.to_strings()})"


def matmul(m: CMatrix, n: CMatrix) -> CMatrix:
    return m @ n


def add(m: CMatrix, n: CMatrix) -> CMatrix:
    return m + n


def scale(m: CMatrix, factor: Union[Scalar, Number]) -> CMatrix:
    return m.scale(factor)


def transpose(m: CMatrix) -> CMatrix:
    return m.transpose()


def dagger(m: CMatrix) -> CMatrix:
    return m.dagger()


def commutator(m: CMatrix, n: CMatrix) -> CMatrix:
    """[M, N] = MN - NM."""
    return m @ n - n @ m


def frobenius(m: CMatrix) -> Union[Fraction, float]:
    """Exact squared Frobenius norm, or the float Frobenius norm."""
    if m.mode is FLOAT:
        return float(np.linalg.norm(m.data))
    total = Fraction(0)
    for x in m.data.flat:
        if not x.is_zero():
            total += x.abs2()
    return total


def deviation(m: CMatrix, n: CMatrix) -> Union[Fraction, float]:
    """Frobenius deviation between two matrices in their common mode."""
    return frobenius(m - n)


def rank_exact(m: CMatrix) -> int:
    """Row rank by fraction-free (Bareiss) elimination over the Gaussian rationals."""
    if m.mode is not EXACT:
        raise ModeMismatchError("rank_exact requires an exact matrix")
    rows = []
    for i in range(m.rows):
        row = [m.data[i, j] for j in range(m.cols)]
        den = 1
        for x in row:
            den = math.lcm(den, x.re.denominator, x.im.denominator)
        rows.append([x * den for x in row])

    n_rows, n_cols = m.rows, m.cols
    zero = Scalar.zero()
    prev = Scalar.one()
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        candidates = (r for r in range(rank, n_rows) if not rows[r][col].is_zero())
        pivot = next(candidates, None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, n_rows):
            a = rows[r][col]
            for c in range(col + 1, n_cols):
                rows[r][c] = (p * rows[r][c] - a * rows[rank][c]) / prev
            rows[r][col] = zero
        prev = p
        rank += 1
    logger.debug(f"rank_exact: {m.rows}x{m.cols} matrix has rank {rank}")
    return rank
