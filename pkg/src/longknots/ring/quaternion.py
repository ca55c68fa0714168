"""Quaternions with Laurent polynomial components and their standard 2x2 image."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coefficients import QQ, QQI, GaussianRational
from .laurent import LaurentPoly

_I = GaussianRational(0, 1)


@dataclass(frozen=True)
class Quaternion:
    """a1 + a2*i + a3*j + a4*k with central Laurent-polynomial components."""

    a1: LaurentPoly
    a2: LaurentPoly
    a3: LaurentPoly
    a4: LaurentPoly

    def __post_init__(self):
        vs = {c.vars for c in self.components}
        if len(vs) != 1:
            raise ValueError(f"quaternion components over different variables: {vs}")
        if any(c.domain is not QQ for c in self.components):
            raise ValueError("quaternion components must have rational coefficients")

    @classmethod
    def from_strings(cls, parts: Iterable[str], variables=("t",)) -> Quaternion:
        parts = list(parts)
        if len(parts) != 4:
            raise ValueError(f"a quaternion needs 4 components, got {len(parts)}")
        return cls(*(LaurentPoly.parse(p, variables, QQ) for p in parts))

    @classmethod
    def scalar(cls, c, variables=("t",)) -> Quaternion:
        zero = LaurentPoly.zero(variables, QQ)
        c = c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c, variables, QQ)
        return cls(c, zero, zero, zero)

    @classmethod
    def basis(cls, name: str, variables=("t",)) -> Quaternion:
        one = LaurentPoly.one(variables, QQ)
        zero = LaurentPoly.zero(variables, QQ)
        slots = {"1": 0, "i": 1, "j": 2, "k": 3}[name]
        parts = [zero] * 4
        parts[slots] = one
        return cls(*parts)

    @property
    def components(self) -> tuple[LaurentPoly, ...]:
        return (self.a1, self.a2, self.a3, self.a4)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.a1.vars

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(x + y for x, y in zip(self.components, other.components)))

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(x - y for x, y in zip(self.components, other.components)))

    def __neg__(self) -> Quaternion:
        return Quaternion(*(-x for x in self.components))

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return Quaternion(*(x * other for x in self.components))
        if not isinstance(other, Quaternion):
            return Quaternion(*(x * other for x in self.components))
        a1, b1, c1, d1 = self.components
        a2, b2, c2, d2 = other.components
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        return Quaternion(*(other * x for x in self.components))

    def conjugate(self) -> Quaternion:
        return Quaternion(self.a1, -self.a2, -self.a3, -self.a4)

    def norm(self) -> LaurentPoly:
        return sum((c * c for c in self.components[1:]), self.a1 * self.a1)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def quat_to_matrix(q: Quaternion):
    """Standard representation into 2x2 matrices over Gaussian Laurent polynomials.

    a1 + a2 i + a3 j + a4 k  ->  [[a1 + a2 i, a3 + a4 i], [-a3 + a4 i, a1 - a2 i]]
    """
    from ..matrix import RingMatrix

    a1, a2, a3, a4 = (c.with_domain(QQI) for c in q.components)
    entries = [
        a1 + a2.scale(_I),
        a3 + a4.scale(_I),
        -a3 + a4.scale(_I),
        a1 - a2.scale(_I),
    ]
    return RingMatrix(2, 2, entries)
