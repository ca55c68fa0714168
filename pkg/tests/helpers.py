"""Random generators shared by the property tests."""

import random
from fractions import Fraction

from longknots.matrix import RingMatrix
from longknots.ring import GF2, GF2_DOMAIN, QQ, QQI, GaussianRational, LaurentPoly, Quaternion

DOMAINS = {"rational": QQ, "gaussian": QQI, "gf2": GF2_DOMAIN}

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def rand_coeff(rng: random.Random, domain):
    if domain is GF2_DOMAIN:
        return GF2(rng.randint(0, 1))
    if domain is QQI:
        return GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 2)), rng.randint(-2, 2))
    return Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))


def rand_poly(rng: random.Random, domain=QQ, variables=("t",), terms=3, lo=-2, hi=3) -> LaurentPoly:
    out = {}
    for _ in range(rng.randint(0, terms)):
        exp = tuple(rng.randint(lo, hi) for _ in variables)
        out[exp] = rand_coeff(rng, domain)
    return LaurentPoly(out, variables, domain)


def rand_matrix(rng: random.Random, n: int, domain=QQ, variables=("t",), m: int | None = None, terms=2) -> RingMatrix:
    m = n if m is None else m
    entries = [rand_poly(rng, domain, variables, terms, lo=-1, hi=2) for _ in range(n * m)]
    return RingMatrix(n, m, entries, variables, domain)


def rand_quaternion(rng: random.Random, constant: bool = False) -> Quaternion:
    if constant:
        return Quaternion(*(LaurentPoly.constant(Fraction(rng.randint(-5, 5), rng.randint(1, 3))) for _ in range(4)))
    return Quaternion(*(rand_poly(rng, QQ) for _ in range(4)))


def rand_unit(rng: random.Random, domain=QQ, variables=("t",), mode: str = "field") -> LaurentPoly:
    exp = tuple(rng.randint(-4, 4) for _ in variables)
    if domain is GF2_DOMAIN:
        c = GF2(1)
    elif mode == "gaussian-integer":
        c = rng.choice([GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1), GaussianRational(0, -1)])
        if domain is QQ:
            c = rng.choice([Fraction(1), Fraction(-1)])
    elif domain is QQI:
        c = GaussianRational(Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 4)), rng.randint(-2, 2))
    else:
        c = Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 4))
    return LaurentPoly.monomial(exp, c, variables, domain)
