"""Complex numbers over an arbitrary real field (ints, Fractions or floats).

Python's ``complex`` is float-only; ``Gaussian`` keeps rational components
exact so that idempotent coordinates and matrix blocks can be compared with
``==`` in exact mode.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Complex, Rational, Real


def is_exact_real(x) -> bool:
    return isinstance(x, Rational)


def exact_or_float(x):
    """Normalize a real scalar: keep ints/Fractions, turn everything else into float."""
    if isinstance(x, Rational):
        return x
    return float(x)


_set = object.__setattr__


class Gaussian:
    """Immutable complex number ``re + i*im`` with generic real components."""

    __slots__ = ("re", "im")

    def __new__(cls, re=0, im=0):
        self = object.__new__(cls)
        _set(self, "re", re)
        _set(self, "im", im)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    def __reduce__(self):
        return (Gaussian, (self.re, self.im))

    def __iter__(self):
        yield self.re
        yield self.im

    def __getitem__(self, k):
        return (self.re, self.im)[k]

    @classmethod
    def coerce(cls, value) -> "Gaussian":
        if isinstance(value, Gaussian):
            return value
        if isinstance(value, Real):
            return cls(exact_or_float(value), 0)
        if isinstance(value, Complex):
            value = complex(value)
            return cls(value.real, value.imag)
        raise TypeError(f"cannot interpret {value!r} as a complex number")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.re, Rational) and isinstance(self.im, Rational)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"Gaussian({self.re!r}, {self.im!r})"

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other) -> bool:
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self
        c, d = other
        return Gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def reciprocal(self) -> "Gaussian":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("reciprocal of zero")
        if isinstance(n, Rational):
            n = Fraction(n)
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return Gaussian.coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Gaussian(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


I = Gaussian(0, 1)
