from .coefficients import GF2, GF2_DOMAIN, QQ, QQI, Domain, GaussianRational, domain_by_name
from .gcd import (
    UNIT_MODES,
    GcdAccumulator,
    NotDivisibleError,
    UnitNormalForm,
    UnsupportedGCDError,
    associates,
    canonicalize,
    exact_divide,
    laurent_divides,
    laurent_gcd,
)
from .laurent import VARIABLE_ORDER, LaurentPoly, PolynomialParseError, VariableSetError, parse_poly, render
from .quaternion import Quaternion, quat_mul, quat_to_matrix


def laurent_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


__all__ = [
    "GF2",
    "GF2_DOMAIN",
    "QQ",
    "QQI",
    "UNIT_MODES",
    "VARIABLE_ORDER",
    "Domain",
    "GaussianRational",
    "GcdAccumulator",
    "LaurentPoly",
    "NotDivisibleError",
    "PolynomialParseError",
    "Quaternion",
    "UnitNormalForm",
    "UnsupportedGCDError",
    "VariableSetError",
    "associates",
    "canonicalize",
    "domain_by_name",
    "exact_divide",
    "laurent_divides",
    "laurent_gcd",
    "laurent_mul",
    "parse_poly",
    "quat_mul",
    "quat_to_matrix",
    "render",
]
