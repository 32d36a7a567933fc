"""Forward-mode dual numbers over numpy arrays."""
from dataclasses import dataclass
from typing import Any, Callable, Tuple

import numpy as np


@dataclass(eq=False)
class Dual:
    """Truncated jet a + b*t with t^2 = 0; parts are scalars or numpy arrays."""

    a: Any
    b: Any = 0.0

    # numpy must hand mixed expressions to the reflected Dual operators
    __array_ufunc__ = None

    @classmethod
    def lift(cls, value: Any) -> "Dual":
        if isinstance(value, Dual):
            return value
        if isinstance(value, np.ndarray):
            return cls(value, np.zeros_like(value))
        return cls(value, 0.0)

    def __add__(self, other: Any) -> "Dual":
        o = Dual.lift(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Dual":
        o = Dual.lift(other)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Any) -> "Dual":
        return Dual.lift(other) - self

    def __mul__(self, other: Any) -> "Dual":
        o = Dual.lift(other)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Dual":
        if isinstance(other, Dual):
            db = (self.b * other.a - self.a * other.b) / other.a**2
            return Dual(self.a / other.a, db)
        return Dual(self.a / other, self.b / other)

    def __matmul__(self, other: Any) -> "Dual":
        o = Dual.lift(other)
        return Dual(self.a @ o.a, self.a @ o.b + self.b @ o.a)

    def __rmatmul__(self, other: Any) -> "Dual":
        return Dual.lift(other) @ self

    def __neg__(self) -> "Dual":
        return Dual(-self.a, -self.b)

    def __getitem__(self, index: Any) -> "Dual":
        return Dual(self.a[index], self.b[index])

    def conj(self) -> "Dual":
        return Dual(np.conj(self.a), np.conj(self.b))

    @property
    def T(self) -> "Dual":
        return Dual(np.transpose(self.a), np.transpose(self.b))

    def dagger(self) -> "Dual":
        return self.conj().T

    @property
    def real(self) -> "Dual":
        return Dual(np.real(self.a), np.real(self.b))


def dexp(z: Any) -> Any:
    """Elementwise exponential of a dual or plain value."""
    if isinstance(z, Dual):
        e = np.exp(z.a)
        return Dual(e, e * z.b)
    return np.exp(z)


def primal(value: Any) -> Any:
    return value.a if isinstance(value, Dual) else value


def tangent(value: Any) -> Any:
    """Tangent part, zero for plain values."""
    if isinstance(value, Dual):
        return value.b
    return np.zeros_like(value) if isinstance(value, np.ndarray) else 0.0


def jet(f: Callable[[Any], Any], x0: np.ndarray) -> Tuple[Any, np.ndarray]:
    """Value of f at x0 and its partial derivatives, stacked along axis 0."""
    x0 = np.asarray(x0)
    value = None
    derivatives = []
    for mu in range(x0.shape[0]):
        direction = np.zeros_like(x0)
        direction[mu] = 1
        out = f(Dual(x0, direction))
        if value is None:
            value = primal(out)
        derivatives.append(tangent(out))
    return value, np.stack([np.asarray(d) for d in derivatives])
