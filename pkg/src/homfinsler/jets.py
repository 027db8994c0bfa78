"""Truncated Taylor jets in one variable.

A :class:`Jet` carries the normalized Taylor coefficients ``c[k] = f^(k)(x0) / k!``
of a scalar function up to a fixed order.  Arithmetic follows the truncated
Leibniz and chain rules, so composing jets gives exact derivatives up to that
order (no step size, no cancellation beyond ordinary floating point).

Coefficients may be Python floats or numpy arrays of a common shape; in the
latter case every operation is applied element-wise, which lets one jet
evaluate a whole grid of expansion points at once.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

__all__ = ["Jet", "Jet4", "polyval_jet"]


def _sqrt(x):
    if isinstance(x, np.ndarray):
        return np.sqrt(x)
    return math.sqrt(x)


class Jet:
    __slots__ = ("c",)
    __array_ufunc__ = None  # make numpy defer to the reflected jet operators

    def __init__(self, coeffs: Sequence):
        if len(coeffs) == 0:
            raise ValueError("a jet needs at least the value coefficient")
        self.c = list(coeffs)

    @classmethod
    def variable(cls, x, order: int = 4) -> "Jet":
        """The identity function expanded at ``x``."""
        zero = x * 0
        c = [x, zero + 1] + [zero] * (order - 1)
        return cls(c[: order + 1])

    @classmethod
    def constant(cls, value, order: int = 4) -> "Jet":
        zero = value * 0
        return cls([value] + [zero] * order)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def value(self):
        return self.c[0]

    def derivative(self, k: int):
        """k-th derivative at the expansion point."""
        return self.c[k] * math.factorial(k)

    @property
    def derivs(self) -> tuple:
        """(f, f', f'', ...) up to the jet order."""
        return tuple(self.derivative(k) for k in range(len(self.c)))

    def deriv(self) -> "Jet":
        """The jet of f', one order shorter."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet([(k + 1) * self.c[k + 1] for k in range(self.order)])

    def truncate(self, order: int) -> "Jet":
        return Jet(self.c[: order + 1])

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        m = min(self.order, o.order) + 1
        return Jet([self.c[k] + o.c[k] for k in range(m)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c])

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.c])
        m = min(self.order, other.order) + 1
        out = []
        for k in range(m):
            acc = self.c[0] * other.c[k]
            for j in range(1, k + 1):
                acc = acc + self.c[j] * other.c[k - j]
            out.append(acc)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet([a / other for a in self.c])
        m = min(self.order, other.order) + 1
        g0 = other.c[0]
        out = []
        for k in range(m):
            acc = self.c[k]
            for j in range(1, k + 1):
                acc = acc - other.c[j] * out[k - j]
            out.append(acc / g0)
        return Jet(out)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, p: int):
        if not isinstance(p, int) or p < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Jet.constant(self.c[0] * 0 + 1, self.order)
        base = self
        while p:
            if p & 1:
                result = result * base
            base = base * base
            p >>= 1
        return result

    def sqrt(self) -> "Jet":
        h0 = _sqrt(self.c[0])
        out = [h0]
        for k in range(1, len(self.c)):
            acc = self.c[k]
            for j in range(1, k):
                acc = acc - out[j] * out[k - j]
            out.append(acc / (2 * h0))
        return Jet(out)

    def __repr__(self):
        return f"Jet({self.c!r})"


def Jet4(x) -> Jet:
    """Order-4 variable jet at ``x``."""
    return Jet.variable(x, 4)


def polyval_jet(coeffs: Sequence, x: Jet) -> Jet:
    """Evaluate sum_k coeffs[k] * x**k by Horner's rule on a jet."""
    acc = Jet.constant(x.c[0] * 0 + coeffs[-1], x.order)
    for a in reversed(coeffs[:-1]):
        acc = acc * x + a
    return acc
