"""Linear switches S = [[A, B], [C, D]] with d x d blocks over a Laurent ring.

A switch is validated when it is built: B, I - A and S must be invertible,
A must be invertible at least over the fraction field, and S must satisfy the Yang-Baxter equation in its 3d x 3d block form

    S12 S23 S12 = S23 S12 S23,  S12 = [[A, B, 0], [C, D, 0], [0, 0, I]],
                                S23 = [[I, 0, 0], [0, A, B], [0, C, D]].

Flat switches must also be involutions.
"""

from __future__ import annotations

import json
from dataclasses import InitVar, dataclass
from pathlib import Path

from .matrix import NotInvertibleError, RingMatrix, adjugate, determinant, mat_inverse
from .ring import GF2_DOMAIN, QQ, QQI, LaurentPoly, PolynomialParseError, Quaternion, domain_by_name, quat_to_matrix
from .ring.gcd import UNIT_MODES

KINDS = ("virtual", "flat")


class InvalidSwitchError(ValueError):
    """A switch axiom failed; ``axiom`` names the identity that does not hold."""

    def __init__(self, axiom: str, detail: str = "") -> None:
        super().__init__(f"switch fails {axiom}" + (f": {detail}" if detail else ""))
        self.axiom = axiom


class SwitchPreconditionError(InvalidSwitchError):
    """A, B or I - A is not invertible, so the switch cannot be completed."""


class SwitchFileError(ValueError):
    def __init__(self, message: str, path=None, line: int | None = None, column: int | None = None) -> None:
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}:{column}"
            where += ": "
        super().__init__(where + message)
        self.path = path
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Switch:
    A: RingMatrix
    B: RingMatrix
    C: RingMatrix
    D: RingMatrix
    name: str = "switch"
    kind: str = "virtual"
    unit_mode: str = "field"
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        blocks = (self.A, self.B, self.C, self.D)
        d = self.A.rows
        for blk in blocks:
            if blk.shape != (d, d):
                raise InvalidSwitchError("block shapes", "A, B, C, D must be square of one size")
            if blk.vars != self.A.vars:
                raise InvalidSwitchError("block rings", "blocks over different variables")
        domains = {b.domain for b in blocks}
        if len(domains) > 1:
            dom = QQI if domains <= {QQ, QQI} else None
            if dom is None:
                raise InvalidSwitchError("block rings", "blocks over different coefficient domains")
            for name in "ABCD":
                object.__setattr__(self, name, getattr(self, name).with_domain(dom))
        if self.kind not in KINDS:
            raise ValueError(f"unknown switch kind {self.kind!r}")
        if self.unit_mode not in UNIT_MODES:
            raise ValueError(f"unknown unit mode {self.unit_mode!r}")
        if check:
            validate(self)

    @property
    def d(self) -> int:
        return self.A.rows

    @property
    def vars(self) -> tuple[str, ...]:
        return self.A.vars

    @property
    def domain(self):
        return self.A.domain

    @property
    def matrix(self) -> RingMatrix:
        return RingMatrix.block([[self.A, self.B], [self.C, self.D]])

    def identity(self, n: int | None = None) -> RingMatrix:
        return RingMatrix.identity(self.d if n is None else n, self.vars, self.domain)

    def zero(self) -> RingMatrix:
        return RingMatrix.zeros(self.d, self.d, self.vars, self.domain)

    def block(self, label: str) -> RingMatrix:
        """The d x d block for a presentation-matrix label (A, B, C, D, 1, -1, 0)."""
        if label in "ABCD" and len(label) == 1:
            return getattr(self, label)
        if label == "1":
            return self.identity()
        if label == "-1":
            return -self.identity()
        if label == "0":
            return self.zero()
        raise KeyError(label)

    def yang_baxter_sides(self) -> tuple[RingMatrix, RingMatrix]:
        i, z = self.identity(), self.zero()
        s12 = RingMatrix.block([[self.A, self.B, z], [self.C, self.D, z], [z, z, i]])
        s23 = RingMatrix.block([[i, z, z], [z, self.A, self.B], [z, self.C, self.D]])
        return s12 * s23 * s12, s23 * s12 * s23

    def __str__(self) -> str:
        return f"{self.name} ({self.kind}, d={self.d}, over {self.domain.name}{list(self.vars)})\n{self.matrix}"


def validate(s: Switch) -> None:
    """Raise InvalidSwitchError naming the first axiom that fails."""
    i = s.identity()
    # The quantum Weyl switch has det A = (1 - q)^2, so A is only asked to be
    # invertible over the fraction field.
    if determinant(s.A).is_zero():
        raise InvalidSwitchError("A invertible", "det = 0")
    for label, m in (("B invertible", s.B), ("I - A invertible", i - s.A)):
        if not determinant(m).is_unit():
            raise InvalidSwitchError(label, f"det = {determinant(m)}")
    if not determinant(s.matrix).is_unit():
        raise InvalidSwitchError("S invertible", f"det = {determinant(s.matrix)}")
    lhs, rhs = s.yang_baxter_sides()
    if lhs != rhs:
        raise InvalidSwitchError("Yang-Baxter equation", "S12 S23 S12 != S23 S12 S23")
    if s.kind == "flat" and not (s.matrix * s.matrix).is_identity():
        raise InvalidSwitchError("S^2 = I", "a flat switch must be an involution")


def completion(A: RingMatrix, B: RingMatrix) -> tuple[RingMatrix, RingMatrix]:
    """C = A^-1 B^-1 A (I - A) and D = I - A^-1 B^-1 A B."""
    i = RingMatrix.identity(A.rows, A.vars, A.domain)
    try:
        a_inv = mat_inverse(A)
    except NotInvertibleError as exc:
        raise SwitchPreconditionError("A invertible", str(exc)) from None
    try:
        b_inv = mat_inverse(B)
    except NotInvertibleError as exc:
        raise SwitchPreconditionError("B invertible", str(exc)) from None
    if not determinant(i - A).is_unit():
        raise SwitchPreconditionError("I - A invertible", f"det(I - A) = {determinant(i - A)}")
    abia = a_inv * b_inv * A
    return abia * (i - A), i - abia * B


def complete_switch(A: RingMatrix, B: RingMatrix, name: str = "switch", kind: str = "virtual", unit_mode: str = "field") -> Switch:
    C, D = completion(A, B)
    return Switch(A, B, C, D, name=name, kind=kind, unit_mode=unit_mode)


def algebra_relation_sides(s: Switch) -> tuple[RingMatrix, RingMatrix]:
    """Both sides of A^-1 B^-1 A B - B^-1 A B = B A^-1 B^-1 A - A."""
    a_inv = mat_inverse(s.A)
    b_inv = mat_inverse(s.B)
    A, B = s.A, s.B
    lhs = a_inv * b_inv * A * B - b_inv * A * B
    rhs = B * a_inv * b_inv * A - A
    return lhs, rhs


def algebra_relation_holds(s: Switch) -> bool:
    """The relation above, cleared of denominators with adjugates.

    Works when A is invertible only over the fraction field.
    """
    A, B = s.A, s.B
    da, db = determinant(A), determinant(B)
    adj_a, adj_b = adjugate(A), adjugate(B)
    lhs = adj_a * adj_b * A * B - adj_b * A * B * da
    rhs = B * adj_a * adj_b * A - A * (da * db)
    return lhs == rhs


# -- symmetry classes -------------------------------------------------------------


def dagger(s: Switch, form: str = "displayed") -> RingMatrix:
    """S-dagger: [[D, C], [C, A]] as displayed, or [[D, C], [B, A]] for the variant."""
    if form == "displayed":
        return RingMatrix.block([[s.D, s.C], [s.C, s.A]])
    if form == "variant":
        return RingMatrix.block([[s.D, s.C], [s.B, s.A]])
    raise ValueError(f"unknown dagger form {form!r}")


def classify_symmetry(s: Switch, form: str = "displayed") -> frozenset[str]:
    """Which of S = S-dagger, S^2 = I, S S-dagger = I hold for the matrices."""
    m = s.matrix
    dag = dagger(s, form)
    found = set()
    if m == dag:
        found.add("self-dagger")
    if (m * m).is_identity():
        found.add("involutory")
    if (m * dag).is_identity():
        found.add("dagger-unitary")
    return frozenset(found)


def symmetry_report(s: Switch) -> dict[str, frozenset[str]]:
    return {form: classify_symmetry(s, form) for form in ("displayed", "variant")}


# -- built-in switches --------------------------------------------------------------


def _budapest() -> Switch:
    q = lambda *parts: quat_to_matrix(Quaternion.from_strings(parts))  # noqa: E731
    return Switch(
        q("1", "1", "0", "0"),
        q("0", "0", "-t", "0"),
        q("0", "0", "t^-1", "0"),
        q("1", "1", "0", "0"),
        name="budapest",
    )


def _weyl_q() -> Switch:
    v = ("q",)
    A = RingMatrix.parse([["1-q", "-q^3+2*q^2-1"], ["0", "1-q"]], v)
    B = RingMatrix.parse([["q", "1"], ["0", "1"]], v)
    C = RingMatrix.parse([["1", "(-q^4+3*q^3-2*q^2-2*q+1)/q"], ["0", "q"]], v)
    D = RingMatrix.parse([["0", "(q^3-2*q^2+1)/q"], ["0", "0"]], v)
    return Switch(A, B, C, D, name="weyl-q")


def weyl_generators(specialise: bool = True) -> tuple[RingMatrix, RingMatrix]:
    """The GF(2) Weyl-algebra pair u = [[x, a], [0, x]], v = [[y, 0], [1/a, y]].

    With ``specialise`` the substitution y = x, a = 1 is applied.
    """
    v3 = ("x", "y", "a")
    u = RingMatrix.parse([["x", "a"], ["0", "x"]], v3, GF2_DOMAIN)
    v = RingMatrix.parse([["y", "0"], ["a^-1", "y"]], v3, GF2_DOMAIN)
    if not specialise:
        return u, v
    x = LaurentPoly.var("x", ("x",), GF2_DOMAIN)
    sub = {"y": x, "a": 1}
    return u.map(lambda e: e.substitute(sub, ("x",))), v.map(lambda e: e.substitute(sub, ("x",)))


def _flat_weyl() -> Switch:
    u, v = weyl_generators()
    A = mat_inverse(u * v)
    return complete_switch(A, u, name="flat-weyl", kind="flat")


def _alexander_spec() -> Switch:
    A = RingMatrix.parse([["2"]], ("t",))
    B = RingMatrix.parse([["1"]], ("t",))
    return complete_switch(A, B, name="alexander-spec")


_BUILTINS = {
    "budapest": _budapest,
    "weyl-q": _weyl_q,
    "flat-weyl": _flat_weyl,
    "alexander-spec": _alexander_spec,
}
BUILTIN_SWITCHES = tuple(_BUILTINS)
_cache: dict[str, Switch] = {}


def builtin_switch(name: str, unit_mode: str = "field") -> Switch:
    if name not in _BUILTINS:
        raise KeyError(f"unknown switch {name!r}; built-ins are {', '.join(BUILTIN_SWITCHES)}")
    if name not in _cache:
        _cache[name] = _BUILTINS[name]()
    s = _cache[name]
    if unit_mode != s.unit_mode:
        s = Switch(s.A, s.B, s.C, s.D, name=s.name, kind=s.kind, unit_mode=unit_mode, check=False)
    return s


# -- switch files --------------------------------------------------------------------


def _parse_block(value, entry_type: str, variables, domain, key: str, path) -> RingMatrix:
    try:
        if entry_type == "quaternion":
            if not (isinstance(value, list) and len(value) == 4 and all(isinstance(x, str) for x in value)):
                raise SwitchFileError(f"{key}: a quaternion entry is a list of 4 polynomial strings", path)
            m = quat_to_matrix(Quaternion.from_strings(value, variables))
            return m
        if not (isinstance(value, list) and value and all(isinstance(r, list) for r in value)):
            raise SwitchFileError(f"{key}: a matrix entry is a list of rows of polynomial strings", path)
        if any(not isinstance(x, str) for r in value for x in r):
            raise SwitchFileError(f"{key}: matrix entries must be polynomial strings", path)
        return RingMatrix.parse(value, variables, domain)
    except PolynomialParseError as exc:
        raise SwitchFileError(f"{key}: {exc}", path) from None


def switch_from_dict(doc: dict, path=None, check: bool = True) -> Switch:
    if not isinstance(doc, dict):
        raise SwitchFileError("top level must be an object", path)
    for key in ("name", "coefficients", "variables", "entry-type", "A", "B"):
        if key not in doc:
            raise SwitchFileError(f"missing field {key!r}", path)
    has_c, has_d = "C" in doc, "D" in doc
    if has_c != has_d:
        raise SwitchFileError("give either A, B or all of A, B, C, D", path)
    kind = doc.get("kind", "virtual")
    if kind not in KINDS:
        raise SwitchFileError(f"kind must be one of {KINDS}", path)
    entry_type = doc["entry-type"]
    if entry_type not in ("quaternion", "matrix"):
        raise SwitchFileError("entry-type must be 'quaternion' or 'matrix'", path)
    try:
        domain = domain_by_name(doc["coefficients"])
    except ValueError as exc:
        raise SwitchFileError(str(exc), path) from None
    variables = doc["variables"]
    if not (isinstance(variables, list) and variables and all(isinstance(v, str) for v in variables)):
        raise SwitchFileError("variables must be a non-empty list of names", path)
    unit_mode = doc.get("unit-mode", "field")
    if unit_mode not in UNIT_MODES:
        raise SwitchFileError(f"unit-mode must be one of {UNIT_MODES}", path)
    blocks = {k: _parse_block(doc[k], entry_type, tuple(variables), domain, k, path) for k in "ABCD" if k in doc}
    name = str(doc["name"])
    if has_c:
        return Switch(blocks["A"], blocks["B"], blocks["C"], blocks["D"], name=name, kind=kind, unit_mode=unit_mode, check=check)
    return complete_switch(blocks["A"], blocks["B"], name=name, kind=kind, unit_mode=unit_mode)


def load_switch(path, check: bool = True) -> Switch:
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SwitchFileError(exc.msg, path, exc.lineno, exc.colno) from None
    return switch_from_dict(doc, path, check)


def switch_to_dict(s: Switch) -> dict:
    """Matrix-form document that ``switch_from_dict`` reads back."""
    return {
        "name": s.name,
        "kind": s.kind,
        "coefficients": s.domain.name,
        "variables": list(s.vars),
        "unit-mode": s.unit_mode,
        "entry-type": "matrix",
        **{k: [[str(e) for e in getattr(s, k).row(i)] for i in range(s.d)] for k in "ABCD"},
    }
