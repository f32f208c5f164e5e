"""Single-seed forward-mode dual numbers.

A ``Dual(v, d)`` carries a value and the directional derivative of that
value along one fixed perturbation direction. Arithmetic follows the usual
dual-number rules, so evaluating any composition of the operations below on
seeded inputs yields the exact directional derivative in ``.deriv``.
Comparisons act on values only, which lets guard clauses (positivity
checks, singularity thresholds) work unchanged on dual inputs.
"""

from __future__ import annotations

import math

__all__ = ["Dual", "sqrt", "exp", "log", "sin", "cos", "tan"]


def _parts(other):
    # Returns (value, deriv) for scalar operands, None otherwise so binary
    # ops can defer to the other operand (e.g. Vec3.__rmul__).
    if isinstance(other, Dual):
        return other.value, other.deriv
    if isinstance(other, (int, float)):
        return other, 0.0
    return None


class Dual:
    __slots__ = ("value", "deriv")

    def __init__(self, value: float, deriv: float = 0.0):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "deriv", deriv)

    def __setattr__(self, name, value):
        raise AttributeError("Dual is immutable")

    def __add__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return Dual(self.value + p[0], self.deriv + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return Dual(self.value - p[0], self.deriv - p[1])

    def __rsub__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return Dual(p[0] - self.value, p[1] - self.deriv)

    def __mul__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        return Dual(self.value * p[0], self.deriv * p[0] + self.value * p[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        v, d = p
        return Dual(self.value / v, (self.deriv * v - self.value * d) / (v * v))

    def __rtruediv__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        v, d = p
        return Dual(v / self.value, (d * self.value - v * self.deriv) / (self.value * self.value))

    def __pow__(self, n):
        if isinstance(n, Dual):
            raise TypeError("dual exponents are not supported")
        return Dual(self.value ** n, n * self.value ** (n - 1) * self.deriv)

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.value < 0:
            return Dual(-self.value, -self.deriv)
        return Dual(self.value, self.deriv)

    def __eq__(self, other):
        p = _parts(other)
        return NotImplemented if p is None else self.value == p[0]

    def __lt__(self, other):
        p = _parts(other)
        return NotImplemented if p is None else self.value < p[0]

    def __le__(self, other):
        p = _parts(other)
        return NotImplemented if p is None else self.value <= p[0]

    def __gt__(self, other):
        p = _parts(other)
        return NotImplemented if p is None else self.value > p[0]

    def __ge__(self, other):
        p = _parts(other)
        return NotImplemented if p is None else self.value >= p[0]

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.deriv!r})"


def sqrt(x):
    if isinstance(x, Dual):
        r = math.sqrt(x.value)
        return Dual(r, x.deriv / (2.0 * r))
    return math.sqrt(x)


def exp(x):
    if isinstance(x, Dual):
        e = math.exp(x.value)
        return Dual(e, e * x.deriv)
    return math.exp(x)


def log(x):
    if isinstance(x, Dual):
        return Dual(math.log(x.value), x.deriv / x.value)
    return math.log(x)


def sin(x):
    if isinstance(x, Dual):
        return Dual(math.sin(x.value), math.cos(x.value) * x.deriv)
    return math.sin(x)


def cos(x):
    if isinstance(x, Dual):
        return Dual(math.cos(x.value), -math.sin(x.value) * x.deriv)
    return math.cos(x)


def tan(x):
    if isinstance(x, Dual):
        t = math.tan(x.value)
        return Dual(t, (1.0 + t * t) * x.deriv)
    return math.tan(x)
