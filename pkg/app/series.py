"""Truncated power series with complex coefficients.

A ``PowerSeries`` of order N holds the coefficients of z^0 .. z^(N-1); every
operation returns a series of the same (or explicitly smaller) order and
never reads past the truncation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .errors import DomainError
from .models import DiskAutomorphism

DEFAULT_ORDER = 64

Scalar = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: np.ndarray
    # set when the series expands a disk automorphism, which makes
    # composition with a non-zero inner constant term possible
    mobius: Optional[DiskAutomorphism] = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise DomainError("a power series needs at least one coefficient")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    # construction

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: int) -> "PowerSeries":
        """Pad with zeros or truncate to exactly ``order`` coefficients."""
        if order < 1:
            raise DomainError(f"order must be at least 1, got {order}")
        src = np.asarray(list(coeffs), dtype=complex)[:order]
        out = np.zeros(order, dtype=complex)
        out[: src.shape[0]] = src
        return cls(out)

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "PowerSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def variable(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([0.0, 1.0], order)

    @property
    def order(self) -> int:
        return int(self.coeffs.shape[0])

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[n])

    def __len__(self) -> int:
        return self.order

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries.from_coeffs(self.coeffs, order)

    # arithmetic

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.order)

    def __add__(self, other) -> "PowerSeries":
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries(self.coeffs[:n] + other.coeffs[:n])

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(-self.coeffs)

    def __sub__(self, other) -> "PowerSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries(complex(other) * self.coeffs)
        n = min(self.order, other.order)
        return PowerSeries(np.convolve(self.coeffs[:n], other.coeffs[:n])[:n])

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries(self.coeffs / complex(other))
        d0 = other.coeffs[0]
        if d0 == 0:
            raise ZeroDivisionError("constant term of the divisor vanishes")
        n = min(self.order, other.order)
        num = self.coeffs[:n]
        den = other.coeffs[:n]
        out = np.zeros(n, dtype=complex)
        for k in range(n):
            acc = num[k] - np.dot(out[:k], den[k:0:-1]) if k else num[k]
            out[k] = acc / d0
        return PowerSeries(out)

    def __rtruediv__(self, other) -> "PowerSeries":
        return PowerSeries.constant(other, self.order) / self

    def shift(self, k: int = 1) -> "PowerSeries":
        """Multiply by z^k, dropping what falls past the truncation."""
        out = np.zeros(self.order, dtype=complex)
        if k < self.order:
            out[k:] = self.coeffs[: self.order - k]
        return PowerSeries(out)

    # calculus

    def integrate(self) -> "PowerSeries":
        """Antiderivative vanishing at 0, same order."""
        out = np.zeros(self.order, dtype=complex)
        n = np.arange(1, self.order)
        out[1:] = self.coeffs[: self.order - 1] / n
        return PowerSeries(out)

    def derivative(self) -> "PowerSeries":
        """Derivative; the order drops by one because the top coefficient is unknown."""
        if self.order < 2:
            raise DomainError("derivative of an order-1 series carries no information")
        n = np.arange(1, self.order)
        return PowerSeries(self.coeffs[1:] * n)

    def exp(self) -> "PowerSeries":
        """exp of the series via the recurrence from E' = E g'."""
        g = self.coeffs
        out = np.zeros(self.order, dtype=complex)
        out[0] = np.exp(g[0])
        kg = np.arange(self.order) * g
        for n in range(1, self.order):
            out[n] = np.dot(kg[1 : n + 1], out[n - 1 :: -1][:n]) / n
        return PowerSeries(out)

    # evaluation

    def __call__(self, z):
        acc = np.zeros_like(np.asarray(z, dtype=complex))
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        if np.ndim(acc) == 0:
            return complex(acc)
        return acc

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner) for an inner series with zero constant term."""
        if inner.coeffs[0] != 0:
            raise DomainError("Horner composition needs a vanishing inner constant term")
        n = min(self.order, inner.order)
        acc = PowerSeries.constant(self.coeffs[n - 1], n)
        if n == 1:
            return acc
        inner = inner.truncate(n)
        for c in self.coeffs[n - 2 :: -1]:
            acc = acc * inner + c
        return acc

    def tail_bound(self, z: complex, coeff_bound: float = 1.0) -> float:
        """coeff_bound * sum_{n >= order} |z|^n, the truncation error for bounded coefficients."""
        r = abs(z)
        if r >= 1.0:
            return math.inf
        return coeff_bound * r ** self.order / (1.0 - r)

    def allclose(self, other: "PowerSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order)
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"PowerSeries(order={self.order}, coeffs={self.coeffs[:6].tolist()}...)"
