"""Divisibility, gcds and normal forms up to units.

Two unit groups are supported.  In ``field`` mode the units are ``c * m`` with
``c`` any nonzero coefficient and ``m`` a monomial.  In ``gaussian-integer``
(content) mode only ``+-1, +-i`` times a monomial are units, so integer content
such as the 2 in ``6t^4 + 15t^2 + 6`` versus ``3t^4 + 15/2 t^2 + 3`` survives
normalisation.

Greatest common divisors are computed only for polynomials that are univariate
after an exponent shift (Euclid over the coefficient field); content mode adds
a Gaussian-integer content layer on top via Gauss's lemma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Literal

from .coefficients import GF2_DOMAIN, QQ, QQI, Domain, GaussianRational, gaussian_gcd, lcm
from .laurent import Exponent, LaurentPoly, VariableSetError, term_key

UnitMode = Literal["field", "gaussian-integer"]
UNIT_MODES = ("field", "gaussian-integer")


class UnsupportedGCDError(ValueError):
    """Raised for gcds of genuinely multivariate polynomials."""


class NotDivisibleError(ArithmeticError):
    pass


def _check_mode(mode: str) -> None:
    if mode not in UNIT_MODES:
        raise ValueError(f"unknown unit mode {mode!r}; expected one of {UNIT_MODES}")


# -- exact division ---------------------------------------------------------


def _normalised(p: LaurentPoly) -> tuple[Exponent, LaurentPoly]:
    """Split p as monomial(shift) * q with q having min exponent 0 everywhere."""
    shift = p.min_exponents()
    return shift, p.shift(tuple(-e for e in shift))


def exact_divide(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return q with p = d*q, raising NotDivisibleError if none exists."""
    if p.vars != d.vars:
        raise VariableSetError(f"variable sets differ: {p.vars} vs {d.vars}")
    if d.is_zero():
        if p.is_zero():
            return p
        raise NotDivisibleError("division by zero")
    if p.is_zero():
        return p
    if d.is_unit():
        return p * d.unit_inverse()
    p_shift, pn = _normalised(p)
    d_shift, dn = _normalised(d)
    if pn.nvars == 1:
        quot = _divide_dense(pn, dn)
    else:
        quot = _divide_multivariate(pn, dn)
    return quot.shift(tuple(a - b for a, b in zip(p_shift, d_shift)))


def _divide_dense(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    pc = to_dense(p)
    dc = to_dense(d)
    domain = p.domain if p.domain is d.domain else QQI
    q, r = dense_divmod(pc, dc, domain)
    if r:
        raise NotDivisibleError(f"{d} does not divide {p}")
    return from_dense(q, p.vars, domain)


def _divide_multivariate(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    lead_exp, lead_c = d.leading()
    inv = d.domain.inverse(lead_c)
    rem = p
    quot = LaurentPoly.zero(p.vars, p.domain)
    while not rem.is_zero():
        exp, c = rem.leading()
        diff = tuple(a - b for a, b in zip(exp, lead_exp))
        if any(e < 0 for e in diff):
            # leading term of d cannot divide: remainder is nonzero
            raise NotDivisibleError(f"{d} does not divide {p}")
        term = LaurentPoly.monomial(diff, c * inv, p.vars, rem.domain)
        quot = quot + term
        rem = rem - term * d
    return quot


def laurent_divides(d: LaurentPoly, p: LaurentPoly) -> bool:
    """True iff p = d*q for a Laurent polynomial q; 0 divides only 0."""
    try:
        exact_divide(p, d)
    except NotDivisibleError:
        return False
    return True


# -- dense univariate helpers -----------------------------------------------


def to_dense(p: LaurentPoly) -> list:
    """Coefficients (low to high) of a univariate polynomial with min exponent 0."""
    if p.nvars != 1:
        raise ValueError("dense form needs a univariate polynomial")
    if p.is_zero():
        return []
    lo = p.min_exponents()[0]
    if lo < 0:
        raise ValueError("shift the polynomial before taking its dense form")
    hi = p.max_exponents()[0]
    out = [p.domain.zero] * (hi + 1)
    for (e,), c in p.terms():
        out[e] = c
    return out


def from_dense(coeffs: list, variables, domain: Domain, offset: int = 0) -> LaurentPoly:
    return LaurentPoly({(offset + i,): c for i, c in enumerate(coeffs) if c}, variables, domain)


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def dense_divmod(a: list, b: list, domain: Domain) -> tuple[list, list]:
    """Polynomial long division over a field on dense coefficient lists."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim(list(a))
    if len(a) < len(b):
        return [], a
    inv = domain.inverse(b[-1])
    q = [domain.zero] * (len(a) - len(b) + 1)
    nb = len(b)
    for k in range(len(a) - nb, -1, -1):
        c = a[k + nb - 1] * inv
        if c:
            q[k] = c
            for j in range(nb):
                a[k + j] = a[k + j] - c * b[j]
    return _trim(q), _trim(a[: nb - 1])


def dense_gcd(a: list, b: list, domain: Domain) -> list:
    """Monic gcd over a field (Euclid)."""
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = dense_divmod(a, b, domain)
        a, b = b, r
    if not a:
        return []
    inv = domain.inverse(a[-1])
    return [c * inv for c in a]


# -- contents ------------------------------------------------------------------


def _as_gaussian_pair(c) -> tuple[Fraction, Fraction]:
    if isinstance(c, GaussianRational):
        return c.re, c.im
    return Fraction(c), Fraction(0)


def coefficient_content(coeffs: Iterable) -> GaussianRational:
    """Gaussian-integer content of a list of Gaussian rationals.

    Returned value c is normalised to lie in the first quadrant (re > 0,
    im >= 0); dividing every coefficient by c leaves Gaussian integers with
    gcd 1.
    """
    pairs = [_as_gaussian_pair(c) for c in coeffs]
    pairs = [p for p in pairs if p != (0, 0)]
    if not pairs:
        return GaussianRational(0)
    den = 1
    for re, im in pairs:
        den = lcm(den, lcm(re.denominator, im.denominator))
    g = (0, 0)
    for re, im in pairs:
        g = gaussian_gcd(g, (int(re * den), int(im * den)))
    content = GaussianRational(Fraction(g[0], den), Fraction(g[1], den))
    return content * first_quadrant_unit(content)


def first_quadrant_unit(z) -> GaussianRational:
    """The unit u in {1, i, -1, -i} with u*z having re > 0 and im >= 0."""
    re, im = _as_gaussian_pair(z)
    if re > 0 and im >= 0:
        return GaussianRational(1)
    if im > 0 and re <= 0:
        return GaussianRational(0, -1)
    if re < 0 and im <= 0:
        return GaussianRational(-1)
    return GaussianRational(0, 1)


# -- normal forms -------------------------------------------------------------


@dataclass(frozen=True)
class UnitNormalForm:
    """p == unit * monomial(shift) * content * primitive.

    ``form`` (content times primitive) is the canonical representative of the
    associate class; two polynomials are associates iff their forms agree.
    """

    primitive: LaurentPoly
    content: object
    unit: object
    shift: Exponent
    mode: str

    @property
    def form(self) -> LaurentPoly:
        if self.content == 1:
            return self.primitive
        return self.primitive.scale(self.content)

    def is_zero(self) -> bool:
        return self.primitive.is_zero()

    def is_one(self) -> bool:
        f = self.form
        return f.is_constant() and f.constant_value() == 1

    def original(self) -> LaurentPoly:
        return self.form.scale(self.unit).shift(self.shift)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnitNormalForm):
            return NotImplemented
        return self.mode == other.mode and self.form == other.form

    def __hash__(self) -> int:
        return hash((self.mode, self.form))

    def __str__(self) -> str:
        return str(self.form)


def canonicalize(p: LaurentPoly, mode: str = "field") -> UnitNormalForm:
    """Normal form of p up to the units of the chosen unit group."""
    _check_mode(mode)
    domain = p.domain
    if p.is_zero():
        return UnitNormalForm(p, domain.one, domain.one, (0,) * p.nvars, mode)
    shift, q = _normalised(p)
    _, lead = q.leading()
    if mode == "field" or domain is GF2_DOMAIN:
        inv = domain.inverse(lead)
        prim = q.scale(inv)
        return UnitNormalForm(prim, domain.one, lead, shift, mode)
    content = coefficient_content(c for _, c in q.terms())
    prim = q.scale(content.inverse())
    _, plead = prim.leading()
    v = first_quadrant_unit(plead)
    prim = prim.scale(v)
    unit = v.inverse()
    if domain is QQ:
        content = content.re
        unit = unit.re
        prim = prim.with_domain(QQ)
    return UnitNormalForm(prim, content, unit, shift, mode)


def associates(p: LaurentPoly, q: LaurentPoly, mode: str = "field") -> bool:
    return canonicalize(p, mode) == canonicalize(q, mode)


def _effective_variable(polys: list[LaurentPoly]) -> int | None:
    """Index of the single variable the (shifted) inputs depend on."""
    used: set[int] = set()
    for p in polys:
        lo = p.min_exponents()
        hi = p.max_exponents()
        used.update(i for i, (a, b) in enumerate(zip(lo, hi)) if a != b)
    if len(used) > 1:
        names = sorted(polys[0].vars[i] for i in used)
        raise UnsupportedGCDError(f"gcd of multivariate polynomials (in {names}) is not supported")
    return next(iter(used), None)


def _field_gcd(polys: list[LaurentPoly]) -> LaurentPoly:
    """Monic gcd over the coefficient field of nonzero inputs."""
    variables = polys[0].vars
    domain = reduce(lambda a, b: a if a is b else QQI, (p.domain for p in polys))
    idx = _effective_variable(polys)
    if idx is None:
        return LaurentPoly.one(variables, domain)
    g: list = []
    for p in polys:
        _, q = _normalised(p.with_domain(domain))
        dense = [domain.zero] * (q.max_exponents()[idx] + 1)
        for exp, c in q.terms():
            dense[exp[idx]] = c
        g = dense if not g else dense_gcd(g, dense, domain)
        if len(g) == 1:
            break
    if len(g) > 1:
        inv = domain.inverse(g[-1])
        g = [c * inv for c in g]
    unit_exp = [0] * len(variables)
    out = {}
    for k, c in enumerate(g):
        if c:
            unit_exp[idx] = k
            out[tuple(unit_exp)] = c
    return LaurentPoly(out, variables, domain)


def laurent_gcd(polys: Iterable[LaurentPoly], mode: str = "field") -> UnitNormalForm:
    """Canonical gcd of a family of Laurent polynomials.

    Zero inputs are ignored (gcd(p, 0) = p); the gcd of no nonzero inputs is 0.
    """
    _check_mode(mode)
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty family")
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return canonicalize(polys[0], mode)
    if len(nonzero) == 1:
        return canonicalize(nonzero[0], mode)
    if mode == "field" or nonzero[0].domain is GF2_DOMAIN:
        return canonicalize(_field_gcd(nonzero), mode)
    forms = [canonicalize(p, mode) for p in nonzero]
    prim = _field_gcd([f.primitive for f in forms])
    prim_form = canonicalize(prim, mode)
    content = _content_gcd([f.content for f in forms])
    return canonicalize(prim_form.primitive.scale(content), mode)


def _content_gcd(contents: list) -> GaussianRational:
    return coefficient_content(contents)


class GcdAccumulator:
    """Running gcd that can stop early once it becomes a unit."""

    def __init__(self, mode: str = "field") -> None:
        _check_mode(mode)
        self.mode = mode
        self.value: UnitNormalForm | None = None

    def add(self, p: LaurentPoly) -> None:
        if p.is_zero():
            if self.value is None:
                self.value = canonicalize(p, self.mode)
            return
        if self.value is None or self.value.is_zero():
            self.value = canonicalize(p, self.mode)
        else:
            self.value = laurent_gcd([self.value.form, p], self.mode)

    @property
    def done(self) -> bool:
        return self.value is not None and self.value.is_one()


__all__ = [
    "GcdAccumulator",
    "NotDivisibleError",
    "UNIT_MODES",
    "UnitNormalForm",
    "UnsupportedGCDError",
    "associates",
    "canonicalize",
    "coefficient_content",
    "exact_divide",
    "laurent_divides",
    "laurent_gcd",
]
