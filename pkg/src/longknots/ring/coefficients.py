"""Exact coefficient domains.

Three domains are supported: the rationals (stored as ``fractions.Fraction``),
the Gaussian rationals ``a + b*i`` with rational ``a`` and ``b``, and the
two-element field.  Gaussian integers are the Gaussian rationals with integral
parts; they only matter for unit normalisation, see ``longknots.ring.gcd``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational


class GaussianRational:
    """An exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        if isinstance(value, GF2):
            raise TypeError("cannot mix GF(2) and Gaussian coefficients")
        return NotImplemented

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_integral(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{abs(self.im)}i)"


class GF2:
    """An element of the field with two elements."""

    __slots__ = ("value",)

    def __init__(self, value: int = 0) -> None:
        object.__setattr__(self, "value", int(value) & 1)

    def __setattr__(self, name, value):
        raise AttributeError("GF2 is immutable")

    @staticmethod
    def _v(other):
        if isinstance(other, GF2):
            return other.value
        if isinstance(other, int):
            return other & 1
        if isinstance(other, Fraction) and other.denominator % 2 == 1:
            return other.numerator & 1
        return None

    def __add__(self, other):
        v = GF2._v(other)
        return NotImplemented if v is None else GF2(self.value ^ v)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        v = GF2._v(other)
        return NotImplemented if v is None else GF2(self.value & v)

    __rmul__ = __mul__

    def __neg__(self) -> GF2:
        return self

    def inverse(self) -> GF2:
        if not self.value:
            raise ZeroDivisionError("inverse of zero in GF(2)")
        return self

    def __truediv__(self, other):
        v = GF2._v(other)
        if v is None:
            return NotImplemented
        if not v:
            raise ZeroDivisionError("division by zero in GF(2)")
        return self

    def __eq__(self, other) -> bool:
        v = GF2._v(other)
        return NotImplemented if v is None else self.value == v

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __repr__(self) -> str:
        return f"GF2({self.value})"

    def __str__(self) -> str:
        return str(self.value)


class Domain:
    """A coefficient domain: knows its zero, one, coercion and text form."""

    def __init__(self, name: str, zero, one) -> None:
        self.name = name
        self.zero = zero
        self.one = one

    def __repr__(self) -> str:
        return f"<Domain {self.name}>"

    def coerce(self, value):
        if self is QQ:
            if isinstance(value, GaussianRational):
                if value.im:
                    raise TypeError(f"{value} is not rational")
                return value.re
            if isinstance(value, GF2):
                raise TypeError("cannot coerce GF(2) element to a rational")
            return Fraction(value)
        if self is QQI:
            if isinstance(value, GF2):
                raise TypeError("cannot coerce GF(2) element to a Gaussian rational")
            return GaussianRational.coerce(value) if not isinstance(value, str) else parse_coefficient(value, self)
        if isinstance(value, GF2):
            return value
        if isinstance(value, (GaussianRational,)):
            raise TypeError("cannot coerce a Gaussian rational to GF(2)")
        if isinstance(value, Fraction):
            if value.denominator % 2 == 0:
                raise ZeroDivisionError(f"{value} has an even denominator")
            value = value.numerator
        return GF2(int(value))

    def inverse(self, value):
        if self is QQ:
            return 1 / Fraction(value)
        return value.inverse()

    def render(self, value) -> str:
        if self is QQI and value.im:
            return str(value)
        if self is QQI:
            return str(value.re)
        return str(value)


QQ = Domain("rational", Fraction(0), Fraction(1))
QQI = Domain("gaussian", GaussianRational(0), GaussianRational(1))
GF2_DOMAIN = Domain("gf2", GF2(0), GF2(1))

DOMAINS = {d.name: d for d in (QQ, QQI, GF2_DOMAIN)}


def domain_by_name(name: str) -> Domain:
    try:
        return DOMAINS[name]
    except KeyError:
        raise ValueError(f"unknown coefficient domain {name!r}; expected one of {sorted(DOMAINS)}") from None


def common_domain(a: Domain, b: Domain) -> Domain:
    if a is b:
        return a
    if {a, b} == {QQ, QQI}:
        return QQI
    raise TypeError(f"incompatible coefficient domains {a.name} and {b.name}")


_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"not a rational number: {text!r}")
    num, den = m.groups()
    return Fraction(int(num), int(den) if den else 1)


def parse_coefficient(text: str, domain: Domain):
    """Parse a coefficient literal such as ``3``, ``-15/2`` or ``(1+2i)``."""
    s = text.strip()
    if domain is QQI and "i" in s:
        body = s[1:-1] if s.startswith("(") and s.endswith(")") else s
        body = body.replace(" ", "")
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)?(?:([+-]?)(\d+(?:/\d+)?)?\*?i)?", body)
        if not m or body == "":
            raise ValueError(f"not a Gaussian rational: {text!r}")
        re_part, sign, im_part = m.groups()
        real = parse_rational(re_part) if re_part else Fraction(0)
        imag = parse_rational(im_part) if im_part else Fraction(1)
        if sign == "-":
            imag = -imag
        return GaussianRational(real, imag)
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return domain.coerce(parse_rational(s))


def gaussian_gcd(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """Euclid's algorithm in Z[i] on (re, im) integer pairs."""
    while b != (0, 0):
        # a / b rounded to the nearest Gaussian integer
        n = b[0] * b[0] + b[1] * b[1]
        re = a[0] * b[0] + a[1] * b[1]
        im = a[1] * b[0] - a[0] * b[1]
        qr = _round_div(re, n)
        qi = _round_div(im, n)
        r = (a[0] - (qr * b[0] - qi * b[1]), a[1] - (qr * b[1] + qi * b[0]))
        a, b = b, r
    return a


def _round_div(a: int, b: int) -> int:
    return (2 * a + b) // (2 * b)


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b) if a and b else 0
