"""Bicomplex numbers ``Z = x + iy + jv + kt`` (k = ij, i^2 = j^2 = -1).

A ``Bicomplex`` stores its four real components. When every component is an
``int`` or ``Fraction`` the value is *exact* and all algebraic operations
(products, conjugations, idempotent coordinates, ``norm_complex_sq``) stay
exact; floats switch the value to floating mode. Norms that need a square
root, angles and polar forms always return floats.

Two views are available:

* ``Z = lambda1 + j*lambda2`` with ``lambda1 = x + iy`` and ``lambda2 = v + it``;
* the idempotent view ``Z = z1*e + z2*e_dag`` where ``e = (1 + ij)/2``,
  ``e_dag = (1 - ij)/2``, ``z1 = lambda1 - i*lambda2`` and
  ``z2 = lambda1 + i*lambda2``. Arithmetic acts componentwise on (z1, z2).
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Complex, Rational, Real
from typing import NamedTuple

from .errors import BicomplexDomainError, NotInvertibleError
from .gaussian import Gaussian, exact_or_float

TWO_PI = 2.0 * math.pi
ZD_TOL = 1e-12

_set = object.__setattr__


def _half(value):
    if isinstance(value, Rational):
        return Fraction(value, 2)
    return value / 2


_RATIONAL_TYPES = (int, Fraction)


def _common_denominator(values):
    """Integer numerators over one shared denominator (speeds up exact products)."""
    den = 1
    for w in values:
        if type(w) is Fraction:
            q = w.denominator
            den = den * q // math.gcd(den, q)
    if den == 1:
        return [int(w) for w in values], 1
    return [w * den if type(w) is int else w.numerator * (den // w.denominator) for w in values], den


def _ratio(n: int, den: int):
    if den == 1:
        return n
    g = math.gcd(n, den)
    return n // g if g == den else Fraction(n // g, den // g)


class Bicomplex:
    """Immutable bicomplex number with components ``(x, y, v, t)``."""

    __slots__ = ("x", "y", "v", "t")

    def __new__(cls, x=0, y=0, v=0, t=0):
        self = object.__new__(cls)
        _set(self, "x", x)
        _set(self, "y", y)
        _set(self, "v", v)
        _set(self, "t", t)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Bicomplex values are immutable")

    def __reduce__(self):
        return (Bicomplex, self.components)

    # -- constructors -------------------------------------------------
    @classmethod
    def coerce(cls, value) -> "Bicomplex":
        if isinstance(value, Bicomplex):
            return value
        if isinstance(value, Real):
            return cls(exact_or_float(value), 0, 0, 0)
        if isinstance(value, Gaussian):
            return cls(value.re, value.im, 0, 0)
        if isinstance(value, Complex):
            value = complex(value)
            return cls(value.real, value.imag, 0, 0)
        if isinstance(value, str):
            return parse_literal(value)
        raise TypeError(f"cannot interpret {value!r} as a bicomplex number")

    @classmethod
    def from_lambdas(cls, lambda1, lambda2=0) -> "Bicomplex":
        l1 = Gaussian.coerce(lambda1)
        l2 = Gaussian.coerce(lambda2)
        return cls(l1.re, l1.im, l2.re, l2.im)

    @classmethod
    def from_idempotent(cls, z1, z2) -> "Bicomplex":
        """Inverse of ``to_idempotent``: lambda1 = (z1+z2)/2, lambda2 = i(z1-z2)/2."""
        z1 = Gaussian.coerce(z1)
        z2 = Gaussian.coerce(z2)
        # z1 = (x+t) + i(y-v), z2 = (x-t) + i(y+v)
        return cls(
            _half(z1.re + z2.re),
            _half(z1.im + z2.im),
            _half(z2.im - z1.im),
            _half(z1.re - z2.re),
        )

    # -- views ----------------------------------------------------------
    @property
    def components(self) -> tuple:
        return (self.x, self.y, self.v, self.t)

    @property
    def lambda1(self) -> Gaussian:
        return Gaussian(self.x, self.y)

    @property
    def lambda2(self) -> Gaussian:
        return Gaussian(self.v, self.t)

    @property
    def z1(self) -> Gaussian:
        return Gaussian(self.x + self.t, self.y - self.v)

    @property
    def z2(self) -> Gaussian:
        return Gaussian(self.x - self.t, self.y + self.v)

    @property
    def is_exact(self) -> bool:
        return (
            isinstance(self.x, Rational)
            and isinstance(self.y, Rational)
            and isinstance(self.v, Rational)
            and isinstance(self.t, Rational)
        )

    def to_float(self) -> "Bicomplex":
        return Bicomplex(float(self.x), float(self.y), float(self.v), float(self.t))

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return (
            self.x == other.x
            and self.y == other.y
            and self.v == other.v
            and self.t == other.t
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.components)

    def __bool__(self):
        return bool(self.x or self.y or self.v or self.t)

    def isclose(self, other, rel_tol=1e-9, abs_tol=0.0) -> bool:
        other = Bicomplex.coerce(other)
        diff = norm_euclid(self - other)
        scale = max(norm_euclid(self), norm_euclid(other))
        return diff <= max(rel_tol * scale, abs_tol)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return Bicomplex(self.x + o.x, self.y + o.y, self.v + o.v, self.t + o.t)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return Bicomplex(self.x - o.x, self.y - o.y, self.v - o.v, self.t - o.t)

    def __rsub__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Bicomplex(-self.x, -self.y, -self.v, -self.t)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Bicomplex):
            o = other
        else:
            try:
                o = Bicomplex.coerce(other)
            except TypeError:
                return NotImplemented
        # (l1 + j l2)(m1 + j m2) = (l1 m1 - l2 m2) + j (l1 m2 + l2 m1)
        a, b, c, d = self.x, self.y, self.v, self.t
        p, q, r, s = o.x, o.y, o.v, o.t
        if all(type(w) in _RATIONAL_TYPES for w in (a, b, c, d, p, q, r, s)):
            (a, b, c, d), da = _common_denominator((a, b, c, d))
            (p, q, r, s), db = _common_denominator((p, q, r, s))
            den = da * db
            return Bicomplex(
                _ratio(a * p - b * q - c * r + d * s, den),
                _ratio(a * q + b * p - c * s - d * r, den),
                _ratio(a * r - b * s + c * p - d * q, den),
                _ratio(a * s + b * r + c * q + d * p, den),
            )
        return Bicomplex(
            a * p - b * q - c * r + d * s,
            a * q + b * p - c * s - d * r,
            a * r - b * s + c * p - d * q,
            a * s + b * r + c * q + d * p,
        )

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Bicomplex(1, 0, 0, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self * try_inverse(o)

    def __rtruediv__(self, other):
        return Bicomplex.coerce(other) * try_inverse(self)

    def scale(self, c) -> "Bicomplex":
        """Multiply every component by the real scalar ``c``."""
        return Bicomplex(self.x * c, self.y * c, self.v * c, self.t * c)

    # -- conjugations ----------------------------------------------------
    def tilde(self) -> "Bicomplex":
        return Bicomplex(self.x, -self.y, -self.v, self.t)

    def hat(self) -> "Bicomplex":
        return Bicomplex(self.x, self.y, -self.v, -self.t)

    def bar(self) -> "Bicomplex":
        return Bicomplex(self.x, -self.y, self.v, -self.t)

    # -- text ------------------------------------------------------------
    def __repr__(self):
        return f"Bicomplex({format_literal(self)})"

    def __str__(self):
        return format_literal(self)

    def to_json(self) -> dict:
        return {k: _json_real(getattr(self, k)) for k in ("x", "y", "v", "t")}

    @classmethod
    def from_json(cls, obj) -> "Bicomplex":
        return cls(*(_real_from_json(obj[k]) for k in ("x", "y", "v", "t")))


ONE = Bicomplex(1, 0, 0, 0)
ZERO = Bicomplex(0, 0, 0, 0)
I = Bicomplex(0, 1, 0, 0)
J = Bicomplex(0, 0, 1, 0)
K = Bicomplex(0, 0, 0, 1)
E = Bicomplex(Fraction(1, 2), 0, 0, Fraction(1, 2))
E_DAG = Bicomplex(Fraction(1, 2), 0, 0, Fraction(-1, 2))


class IdempotentPair(NamedTuple):
    z1: Gaussian
    z2: Gaussian


@dataclass(frozen=True)
class HyperbolicValue:
    """``nu*e + mu*e_dag`` with nu, mu >= 0 (closure of the positive hyperbolic numbers)."""

    nu: float
    mu: float

    def __le__(self, other: "HyperbolicValue") -> bool:
        return self.nu <= other.nu and self.mu <= other.mu

    def __ge__(self, other: "HyperbolicValue") -> bool:
        return other <= self

    def __add__(self, other: "HyperbolicValue") -> "HyperbolicValue":
        return HyperbolicValue(self.nu + other.nu, self.mu + other.mu)

    def __mul__(self, other: "HyperbolicValue") -> "HyperbolicValue":
        return HyperbolicValue(self.nu * other.nu, self.mu * other.mu)

    @property
    def is_positive(self) -> bool:
        return self.nu > 0 and self.mu > 0

    def as_bicomplex(self) -> Bicomplex:
        return Bicomplex.from_idempotent(self.nu, self.mu)


@dataclass(frozen=True)
class ComplexAngle:
    theta: complex

    def __post_init__(self):
        _set(self, "theta", _principal(complex(self.theta)))


@dataclass(frozen=True)
class PolarForm:
    rho: complex
    theta: ComplexAngle

    def reconstruct(self) -> Bicomplex:
        return exp_j(self.theta.theta) * self.rho


@dataclass(frozen=True)
class HyperbolicPolarForm:
    r1: float
    r2: float
    theta1: float
    theta2: float

    def reconstruct(self) -> Bicomplex:
        return Bicomplex.from_idempotent(
            cmath.rect(self.r1, self.theta1), cmath.rect(self.r2, self.theta2)
        )


def _principal(theta: complex) -> complex:
    re_part = theta.real % TWO_PI
    if re_part >= TWO_PI:
        re_part = 0.0
    return complex(re_part, theta.imag)


def _angle(z: complex) -> float:
    a = cmath.phase(z) % TWO_PI
    return 0.0 if a >= TWO_PI else a


# -- module-level operations ------------------------------------------------

def mul(Z, W) -> Bicomplex:
    return Bicomplex.coerce(Z) * Bicomplex.coerce(W)


CONJUGATIONS = ("tilde", "hat", "bar")


def conj(kind: str, Z) -> Bicomplex:
    Z = Bicomplex.coerce(Z)
    if kind == "tilde":
        return Z.tilde()
    if kind == "hat":
        return Z.hat()
    if kind == "bar":
        return Z.bar()
    raise ValueError(f"unknown conjugation {kind!r}")


def compose_conjugations(first: str | None, second: str | None) -> str | None:
    """Kind equal to applying ``first`` then ``second`` (None is the identity)."""
    kinds = {first, second} - {None}
    if first == second:
        return None
    if len(kinds) == 1:
        return kinds.pop()
    (third,) = set(CONJUGATIONS) - kinds
    return third


def to_idempotent(Z) -> IdempotentPair:
    Z = Bicomplex.coerce(Z)
    return IdempotentPair(Z.z1, Z.z2)


def from_idempotent(pair) -> Bicomplex:
    z1, z2 = pair
    return Bicomplex.from_idempotent(z1, z2)


def norm_euclid(Z) -> float:
    Z = Bicomplex.coerce(Z)
    return math.sqrt(float(Z.x * Z.x + Z.y * Z.y + Z.v * Z.v + Z.t * Z.t))


def norm_complex_sq(Z) -> Gaussian:
    """lambda1^2 + lambda2^2 (equal to z1*z2); exact in exact mode."""
    Z = Bicomplex.coerce(Z)
    l1, l2 = Z.lambda1, Z.lambda2
    return l1 * l1 + l2 * l2


def complex_sqrt_h(w: complex) -> complex:
    """Square root landing in H+: principal root on [0, inf), otherwise Im > 0."""
    w = complex(w)
    if w.imag == 0.0 and w.real >= 0.0:
        return complex(math.sqrt(w.real), 0.0)
    r = cmath.sqrt(w)
    if r.imag < 0.0 or (r.imag == 0.0 and r.real < 0.0):
        r = -r
    return r


def _unit_scaled(Z: Bicomplex, m: float) -> Bicomplex:
    # divide rather than multiply by 1/m, which overflows for subnormal m
    return Bicomplex(*(float(c) / m for c in Z.components))


def norm_complex(Z) -> complex:
    Z = Bicomplex.coerce(Z)
    m = max(abs(float(c)) for c in Z.components)
    if m == 0.0:
        return 0j
    # rescale first so z1*z2 cannot under- or overflow
    return m * complex_sqrt_h(complex(norm_complex_sq(_unit_scaled(Z, m))))


def norm_hyperbolic(Z) -> HyperbolicValue:
    Z = Bicomplex.coerce(Z)
    return HyperbolicValue(abs(Z.z1), abs(Z.z2))


def is_zero_divisor(Z, tol: float = ZD_TOL) -> bool:
    """True for nonzero Z with z1*z2 = 0 (relative ``tol`` in floating mode)."""
    Z = Bicomplex.coerce(Z)
    if not Z:
        return False
    z1, z2 = Z.z1, Z.z2
    if Z.is_exact:
        return not z1 or not z2
    return min(abs(z1), abs(z2)) <= tol * norm_euclid(Z)


def is_invertible(Z, tol: float = ZD_TOL) -> bool:
    Z = Bicomplex.coerce(Z)
    return bool(Z) and not is_zero_divisor(Z, tol)


def try_inverse(Z, tol: float = ZD_TOL) -> Bicomplex:
    Z = Bicomplex.coerce(Z)
    if not Z:
        raise NotInvertibleError("0 is not invertible")
    if is_zero_divisor(Z, tol):
        raise NotInvertibleError(f"{Z} is a zero divisor")
    return Bicomplex.from_idempotent(Z.z1.reciprocal(), Z.z2.reciprocal())


def _require_invertible(Z, what: str) -> Bicomplex:
    Z = Bicomplex.coerce(Z)
    if not is_invertible(Z):
        raise BicomplexDomainError(f"{what} requires an invertible argument, got {Z}")
    return Z


def arg_complex(Z) -> ComplexAngle:
    """Principal complex argument: cos(theta) = lambda1/rho, sin(theta) = lambda2/rho."""
    Z = _require_invertible(Z, "arg_complex")
    Z = _unit_scaled(Z, max(abs(float(c)) for c in Z.components))
    rho = norm_complex(Z)
    w1 = complex(Z.lambda1) / rho
    w2 = complex(Z.lambda2) / rho
    # (w1 + i w2)(w1 - i w2) = 1, so exp(i theta) = w1 + i w2
    theta = -1j * cmath.log(w1 + 1j * w2)
    return ComplexAngle(theta)


def exp_j(theta) -> Bicomplex:
    """cos(theta) + j sin(theta) for a complex angle theta."""
    if isinstance(theta, ComplexAngle):
        theta = theta.theta
    theta = complex(theta)
    return Bicomplex.from_lambdas(cmath.cos(theta), cmath.sin(theta))


def polar_form(Z) -> PolarForm:
    Z = _require_invertible(Z, "polar_form")
    return PolarForm(norm_complex(Z), arg_complex(Z))


def proj_i(Z) -> Bicomplex:
    Z = _require_invertible(Z, "proj_i")
    rho = norm_complex(Z)
    return Bicomplex.from_lambdas(complex(Z.lambda1) / rho, complex(Z.lambda2) / rho)


def proj_k(Z) -> Bicomplex:
    Z = _require_invertible(Z, "proj_k")
    z1, z2 = complex(Z.z1), complex(Z.z2)
    return Bicomplex.from_idempotent(z1 / abs(z1), z2 / abs(z2))


def hyperbolic_polar(Z) -> HyperbolicPolarForm:
    Z = _require_invertible(Z, "hyperbolic_polar")
    z1, z2 = complex(Z.z1), complex(Z.z2)
    return HyperbolicPolarForm(abs(z1), abs(z2), _angle(z1), _angle(z2))


def arg_hyperbolic(Z) -> tuple[float, float]:
    hp = hyperbolic_polar(Z)
    return hp.theta1, hp.theta2


# -- literals --------------------------------------------------------------

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_TERM_RE = re.compile(rf"\s*([+-])?\s*({_NUMBER})?\s*([ijk])?\s*")


def parse_real(text: str):
    """Parse ``"3"``, ``"-1/2"`` or ``"0.25"`` into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(Fraction(num), int(den))
    value = Fraction(text)
    return int(value) if value.denominator == 1 else value


def parse_literal(text: str) -> Bicomplex:
    """Parse ``"a+bi+cj+dk"`` (any subset of terms, signs allowed)."""
    src = text.strip()
    if not src:
        raise ValueError("empty bicomplex literal")
    comps = {"": 0, "i": 0, "j": 0, "k": 0}
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        sign, num, unit = m.group(1), m.group(2), m.group(3)
        if num is None and unit is None:
            raise ValueError(f"invalid bicomplex literal {text!r} at column {pos + 1}")
        if sign is None and not first:
            raise ValueError(f"missing sign in bicomplex literal {text!r} at column {pos + 1}")
        value = parse_real(num) if num is not None else 1
        if sign == "-":
            value = -value
        comps[unit or ""] += value
        pos = m.end()
        first = False
    return Bicomplex(comps[""], comps["i"], comps["j"], comps["k"])


def format_real(value) -> str:
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    value = float(value)
    if value.is_integer() and abs(value) < 1e16:
        return f"{value:.1f}"
    return repr(value)


def format_literal(Z) -> str:
    Z = Bicomplex.coerce(Z)
    parts = []
    for value, unit in zip(Z.components, ("", "i", "j", "k")):
        if value == 0:
            continue
        neg = value < 0
        mag = -value if neg else value
        body = format_real(mag)
        if unit and body == "1":
            body = ""
        parts.append(("-" if neg else "+") + body + unit)
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text[0] == "+" else text


def _json_real(value):
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return float(value)


def _real_from_json(value):
    if isinstance(value, str):
        return parse_real(value)
    return value
