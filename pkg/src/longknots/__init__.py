"""Exact invariants of long virtual and flat knots from linear switches."""

from .diagram import (
    BUILTIN_DIAGRAMS,
    EQUIVALENT_PAIRS,
    DiagramError,
    DiagramKindError,
    DiagramParseError,
    LongDiagram,
    Move,
    Passage,
    apply_move,
    builtin_diagram,
    concat,
    concat_all,
    descent,
    parse_code,
    random_moves,
    replay,
    transform,
)
from .invariants import (
    VARIANTS,
    InvariantProfile,
    KindMismatchError,
    PresentationMatrix,
    build_presentation,
    check_divisibility,
    check_product_formula,
    closed_presentation,
    codim_det,
    fuzz_invariance,
    invariant_profile,
)
from .matrix import RingMatrix
from .ring import LaurentPoly, Quaternion, UnitNormalForm, canonicalize, parse_poly
from .switch import (
    BUILTIN_SWITCHES,
    InvalidSwitchError,
    Switch,
    builtin_switch,
    complete_switch,
    load_switch,
    validate,
)

__all__ = [
    "BUILTIN_DIAGRAMS",
    "BUILTIN_SWITCHES",
    "EQUIVALENT_PAIRS",
    "VARIANTS",
    "DiagramError",
    "DiagramKindError",
    "DiagramParseError",
    "InvalidSwitchError",
    "InvariantProfile",
    "KindMismatchError",
    "LaurentPoly",
    "LongDiagram",
    "Move",
    "Passage",
    "PresentationMatrix",
    "Quaternion",
    "RingMatrix",
    "Switch",
    "UnitNormalForm",
    "apply_move",
    "build_presentation",
    "builtin_diagram",
    "builtin_switch",
    "canonicalize",
    "check_divisibility",
    "check_product_formula",
    "closed_presentation",
    "codim_det",
    "complete_switch",
    "concat",
    "concat_all",
    "descent",
    "fuzz_invariance",
    "invariant_profile",
    "load_switch",
    "parse_code",
    "parse_poly",
    "random_moves",
    "replay",
    "transform",
    "validate",
]
