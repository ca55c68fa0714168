"""Multivariate Laurent polynomials with exact coefficients.

A polynomial is a finite map from integer exponent vectors to nonzero
coefficients.  Variables are drawn from ``VARIABLE_ORDER`` and are always kept
in that order, which also fixes the graded-lexicographic term order used for
leading terms and for rendering.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .coefficients import (
    GF2,
    GF2_DOMAIN,
    QQ,
    QQI,
    Domain,
    GaussianRational,
    common_domain,
    parse_rational,
)

VARIABLE_ORDER = ("t", "q", "x", "y", "a")

Exponent = tuple[int, ...]

# Desk-scale inputs never get near this; exceeding it means something went wrong.
MAX_EXPONENT = 2**31 - 1


class VariableSetError(ValueError):
    """Raised when polynomials over different variable sets are combined."""


class PolynomialParseError(ValueError):
    def __init__(self, message: str, text: str, column: int) -> None:
        super().__init__(f"{message} at column {column + 1}: {text!r}")
        self.text = text
        self.column = column


def _order_vars(variables: Iterable[str]) -> tuple[str, ...]:
    variables = tuple(variables)
    for v in variables:
        if v not in VARIABLE_ORDER:
            raise VariableSetError(f"unknown variable {v!r}; allowed: {VARIABLE_ORDER}")
    if len(set(variables)) != len(variables):
        raise VariableSetError(f"repeated variable in {variables}")
    return tuple(v for v in VARIABLE_ORDER if v in variables)


def term_key(exp: Exponent) -> tuple:
    """Sort key for graded-lexicographic order (larger is leading)."""
    return (sum(exp), exp)


class LaurentPoly:
    """An immutable Laurent polynomial.

    >>> t = LaurentPoly.var("t")
    >>> str((1 + t) * (1 - t))
    '-t^2 + 1'
    """

    __slots__ = ("vars", "domain", "_terms", "_hash")

    def __init__(
        self,
        terms: Mapping[Exponent, object] | None = None,
        variables: Iterable[str] = ("t",),
        domain: Domain = QQ,
    ) -> None:
        ordered = _order_vars(variables)
        given = tuple(variables)
        perm = None if ordered == given else [given.index(v) for v in ordered]
        clean: dict[Exponent, object] = {}
        zero = domain.zero
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(ordered):
                raise VariableSetError(f"exponent {exp} does not match variables {ordered}")
            if perm is not None:
                exp = tuple(exp[i] for i in perm)
            c = domain.coerce(c)
            if c != zero:
                if exp in clean:
                    c = clean[exp] + c
                    if c == zero:
                        del clean[exp]
                        continue
                clean[exp] = c
        self._init(clean, ordered, domain)

    def _init(self, terms: dict, variables: tuple[str, ...], domain: Domain) -> None:
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms: dict, variables: tuple[str, ...], domain: Domain) -> LaurentPoly:
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p._init(terms, variables, domain)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str] = ("t",), domain: Domain = QQ) -> LaurentPoly:
        return cls._raw({}, _order_vars(variables), domain)

    @classmethod
    def constant(cls, c, variables: Iterable[str] = ("t",), domain: Domain = QQ) -> LaurentPoly:
        variables = _order_vars(variables)
        return cls({(0,) * len(variables): c}, variables, domain)

    @classmethod
    def one(cls, variables: Iterable[str] = ("t",), domain: Domain = QQ) -> LaurentPoly:
        return cls.constant(1, variables, domain)

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None, domain: Domain = QQ) -> LaurentPoly:
        variables = _order_vars(variables if variables is not None else (name,))
        if name not in variables:
            raise VariableSetError(f"{name!r} not in {variables}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls({exp: 1}, variables, domain)

    @classmethod
    def monomial(cls, exp: Exponent, c=1, variables: Iterable[str] = ("t",), domain: Domain = QQ) -> LaurentPoly:
        return cls({tuple(exp): c}, variables, domain)

    @classmethod
    def parse(cls, text: str, variables: Iterable[str] = ("t",), domain: Domain = QQ) -> LaurentPoly:
        return _Parser(text, _order_vars(variables), domain).parse()

    # -- basic access -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def terms(self) -> Iterator[tuple[Exponent, object]]:
        return iter(self._terms.items())

    def coefficient(self, exp: Exponent):
        return self._terms.get(tuple(exp), self.domain.zero)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self._terms.values()), self.domain.zero)

    def leading(self) -> tuple[Exponent, object]:
        """Leading (exponent, coefficient) pair in graded-lex order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=term_key)
        return exp, self._terms[exp]

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self._terms))

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return sorted(self._terms.items(), key=lambda kv: term_key(kv[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: LaurentPoly) -> Domain:
        if self.vars != other.vars:
            raise VariableSetError(f"variable sets differ: {self.vars} vs {other.vars}")
        return common_domain(self.domain, other.domain)

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, GaussianRational, GF2)):
            return LaurentPoly.constant(other, self.vars, self.domain)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        domain = self._check(other)
        terms = dict(self._terms) if domain is self.domain else {e: domain.coerce(c) for e, c in self._terms.items()}
        zero = domain.zero
        for exp, c in other._terms.items():
            s = terms.get(exp, zero) + c
            if s == zero:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return LaurentPoly._raw(terms, self.vars, domain)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.vars, self.domain)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, GF2)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        domain = self._check(other)
        if not self._terms or not other._terms:
            return LaurentPoly._raw({}, self.vars, domain)
        zero = domain.zero
        out: dict[Exponent, object] = {}
        n = self.nvars
        if n == 1:
            for (e1,), c1 in self._terms.items():
                for (e2,), c2 in other._terms.items():
                    k = (e1 + e2,)
                    out[k] = out.get(k, zero) + c1 * c2
        else:
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    k = tuple(a + b for a, b in zip(e1, e2))
                    out[k] = out.get(k, zero) + c1 * c2
        if domain is not self.domain or domain is not other.domain:
            out = {e: domain.coerce(c) for e, c in out.items()}
        for exp in [e for e, c in out.items() if c == zero]:
            del out[exp]
        _check_exponents(out)
        return LaurentPoly._raw(out, self.vars, domain)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, GF2)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> LaurentPoly:
        domain = self.domain
        if isinstance(c, GaussianRational) and domain is QQ:
            domain = QQI
        c = domain.coerce(c)
        if c == domain.zero:
            return LaurentPoly._raw({}, self.vars, domain)
        return LaurentPoly._raw({e: domain.coerce(v) * c for e, v in self._terms.items()}, self.vars, domain)

    def shift(self, exp: Exponent) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``exp``."""
        exp = tuple(exp)
        if not any(exp):
            return self
        out = {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()}
        _check_exponents(out)
        return LaurentPoly._raw(out, self.vars, self.domain)

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = LaurentPoly.one(self.vars, self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_unit(self) -> bool:
        """True for nonzero monomials: the units when coefficients form a field."""
        return len(self._terms) == 1

    def unit_inverse(self) -> LaurentPoly:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        (exp, c), = self._terms.items()
        return LaurentPoly._raw(
            {tuple(-e for e in exp): self.domain.inverse(c)}, self.vars, self.domain
        )

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.unit_inverse()

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational, GF2)):
            other = self._lift(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vars, frozenset(self._terms.items()))))
        return self._hash

    # -- conversions ------------------------------------------------------

    def with_domain(self, domain: Domain) -> LaurentPoly:
        if domain is self.domain:
            return self
        return LaurentPoly({e: domain.coerce(c) for e, c in self._terms.items()}, self.vars, domain)

    def with_vars(self, variables: Iterable[str]) -> LaurentPoly:
        """Embed into a larger variable set (or drop unused variables)."""
        variables = _order_vars(variables)
        if variables == self.vars:
            return self
        idx = {v: i for i, v in enumerate(self.vars)}
        for exp in self._terms:
            for v, e in zip(self.vars, exp):
                if e and v not in variables:
                    raise VariableSetError(f"variable {v!r} occurs in {self}")
        out = {tuple(exp[idx[v]] if v in idx else 0 for v in variables): c for exp, c in self._terms.items()}
        return LaurentPoly._raw(out, variables, self.domain)

    def map_coefficients(self, fn, domain: Domain | None = None) -> LaurentPoly:
        domain = domain or self.domain
        return LaurentPoly({e: fn(c) for e, c in self._terms.items()}, self.vars, domain)

    def substitute(self, values: Mapping[str, object], variables: Iterable[str] | None = None) -> LaurentPoly:
        """Substitute polynomials (or constants) for some variables.

        Negative powers need the substituted value to be a unit.
        """
        target = _order_vars(variables) if variables is not None else tuple(v for v in self.vars if v not in values)
        result = LaurentPoly.zero(target, self.domain)
        images = {}
        for v in self.vars:
            if v in values:
                val = values[v]
                if not isinstance(val, LaurentPoly):
                    val = LaurentPoly.constant(val, target, self.domain)
                images[v] = val
            else:
                images[v] = LaurentPoly.var(v, target, self.domain)
        for exp, c in self._terms.items():
            term = LaurentPoly.constant(c, target, self.domain)
            for v, e in zip(self.vars, exp):
                if e:
                    term = term * images[v] ** e
            result = result + term
        return result

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)!r}, vars={self.vars}, domain={self.domain.name})"


def _check_exponents(terms: Mapping[Exponent, object]) -> None:
    for exp in terms:
        for e in exp:
            if e > MAX_EXPONENT or e < -MAX_EXPONENT:
                raise OverflowError(f"exponent {e} out of range")


def _render_monomial(variables: tuple[str, ...], exp: Exponent) -> str:
    parts = []
    for v, e in zip(variables, exp):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def render(p: LaurentPoly) -> str:
    """Render in the canonical text grammar, e.g. ``3*t^4 + 15/2*t^2 + 3``."""
    if p.is_zero():
        return "0"
    out: list[str] = []
    for exp, c in p.sorted_terms():
        mono = _render_monomial(p.vars, exp)
        negative = False
        if isinstance(c, GaussianRational):
            if c.im:
                coeff = str(c)
            else:
                negative = c.re < 0
                coeff = str(abs(c.re))
        elif isinstance(c, GF2):
            coeff = "1"
        else:
            negative = c < 0
            coeff = str(abs(c))
        if mono:
            body = mono if coeff == "1" else f"{coeff}*{mono}"
        else:
            body = coeff
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\S))")


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    Accepts sums/differences of products of rationals, variables with integer
    exponents, parenthesised subexpressions, the imaginary unit ``i`` (Gaussian
    domain only) and division by units.
    """

    def __init__(self, text: str, variables: tuple[str, ...], domain: Domain) -> None:
        self.text = text
        self.vars = variables
        self.domain = domain
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def error(self, message: str):
        col = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise PolynomialParseError(message, self.text, col)

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            self.error(f"expected {value!r}" if value else "unexpected end of input")
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            self.error("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> LaurentPoly:
        sign = 1
        tok = self.peek()
        if tok and tok[1] in "+-":
            self.i += 1
            sign = -1 if tok[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while (tok := self.peek()) is not None and tok[1] in "+-":
            self.i += 1
            rhs = self.term()
            result = result + rhs if tok[1] == "+" else result - rhs
        return result

    def term(self) -> LaurentPoly:
        result = self.factor()
        while (tok := self.peek()) is not None and (tok[1] in "*/(" or tok[0] == "name"):
            if tok[1] in "*/":
                self.i += 1
            rhs = self.factor()
            if tok[1] != "/":
                result = result * rhs
            else:
                if rhs.is_zero():
                    self.error("division by zero")
                if not rhs.is_unit():
                    self.error("division by a non-unit")
                result = result * rhs.unit_inverse()
        return result

    def factor(self) -> LaurentPoly:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.i += 1
            sign = 1
            if (t2 := self.peek()) is not None and t2[1] in "+-":
                self.i += 1
                sign = -1 if t2[1] == "-" else 1
            num = self.take()
            if num[0] != "num":
                self.error("expected integer exponent")
            k = sign * int(num[1])
            if k < 0 and not base.is_unit():
                self.error("negative power of a non-unit")
            base = base**k
        return base

    def atom(self) -> LaurentPoly:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        kind, value, _ = tok
        if kind == "num":
            self.i += 1
            return LaurentPoly.constant(int(value), self.vars, self.domain)
        if kind == "name":
            self.i += 1
            if value == "i":
                if self.domain is not QQI:
                    self.error("imaginary unit outside the Gaussian domain")
                return LaurentPoly.constant(GaussianRational(0, 1), self.vars, self.domain)
            if value not in self.vars:
                self.error(f"unknown variable {value!r}")
            return LaurentPoly.var(value, self.vars, self.domain)
        if value == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        self.error(f"unexpected token {value!r}")


def parse_poly(text: str, variables: Iterable[str] = ("t",), domain: Domain = QQ) -> LaurentPoly:
    return LaurentPoly.parse(text, variables, domain)


__all__ = [
    "GF2_DOMAIN",
    "LaurentPoly",
    "PolynomialParseError",
    "VARIABLE_ORDER",
    "VariableSetError",
    "parse_poly",
    "parse_rational",
    "render",
    "term_key",
]
