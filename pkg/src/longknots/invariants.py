"""Presentation matrices of long knots and their codimension-r determinants.

A diagram with c crossings gives 2c block relations in the 2c + 1 semi-arc
generators.  Each block is 0, +-1, A, B, C or D; the Laurent matrix is obtained
by substituting the d x d switch blocks.  Submatrices are always chosen on the
block level and only then expanded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .diagram import LongDiagram, Move, concat, random_moves
from .matrix import ALGORITHMS, RingMatrix, determinant
from .ring import GcdAccumulator, LaurentPoly, UnitNormalForm, canonicalize, laurent_divides
from .switch import Switch

VARIANTS = ("M", "Mhat", "Mo", "Mn")


class KindMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class PresentationMatrix:
    """Sparse block matrix.

    ``relations[k]`` is a sorted tuple of (generator index, labels) pairs; a
    block is the sum of its labels, each one of "1", "-1", "A", "B", "C", "D".
    Sums only occur when a crossing meets itself, as in a kink.
    """

    variant: str
    relations: tuple[tuple[tuple[int, tuple[str, ...]], ...], ...]
    generators: int
    switch: Switch = field(compare=False)
    diagram: LongDiagram | None = field(default=None, compare=False)

    @property
    def relation_count(self) -> int:
        return len(self.relations)

    @property
    def shape(self) -> tuple[int, int]:
        return self.relation_count, self.generators

    def pattern(self) -> list[list[str]]:
        """Block labels as strings, "0" for empty blocks and e.g. "D-1" for sums."""
        grid = [["0"] * self.generators for _ in self.relations]
        for i, rel in enumerate(self.relations):
            for j, labels in rel:
                grid[i][j] = _label_text(labels)
        return grid

    def block(self, i: int, j: int) -> RingMatrix:
        labels = dict(self.relations[i]).get(j, ("0",))
        return _block_matrix(self.switch, labels)

    def to_matrix(self, rows=None, cols=None) -> RingMatrix:
        """Expand the chosen block rows and columns into a Laurent matrix."""
        rows = range(self.relation_count) if rows is None else list(rows)
        cols = range(self.generators) if cols is None else list(cols)
        d = self.switch.d
        col_pos = {c: k for k, c in enumerate(cols)}
        width = d * len(col_pos)
        zero = LaurentPoly.zero(self.switch.vars, self.switch.domain)
        entries = [zero] * (d * len(rows) * width)
        for a, i in enumerate(rows):
            for j, labels in self.relations[i]:
                b = col_pos.get(j)
                if b is None:
                    continue
                blk = _block_matrix(self.switch, labels)
                for u in range(d):
                    base = (d * a + u) * width + d * b
                    entries[base : base + d] = blk.entries[u * d : u * d + d]
        return RingMatrix(d * len(rows), width, entries, self.switch.vars, self.switch.domain)

    def __str__(self) -> str:
        grid = self.pattern()
        width = max((len(x) for row in grid for x in row), default=1)
        return "\n".join("[ " + "  ".join(x.rjust(width) for x in row) + " ]" for row in grid)


def _label_text(labels: tuple[str, ...]) -> str:
    return "+".join(labels).replace("+-", "-")


def _block_matrix(s: Switch, labels: tuple[str, ...]) -> RingMatrix:
    total = None
    for label in labels:
        if label in ("A", "B", "C", "D"):
            m = s.block(label)
        elif label == "1":
            m = s.identity()
        elif label == "-1":
            m = -s.identity()
        elif label == "0":
            m = s.zero()
        else:
            raise ValueError(f"unknown block label {label!r}")
        total = m if total is None else total + m
    return total if total is not None else s.zero()


def _relation(*entries: tuple[int, str]) -> tuple[tuple[int, tuple[str, ...]], ...]:
    merged: dict[int, list[str]] = {}
    for j, label in entries:
        merged.setdefault(j, []).append(label)
    return tuple(sorted((j, tuple(labels)) for j, labels in merged.items()))


def _crossing_entries(d: LongDiagram) -> list[list[tuple[int, str]]]:
    rows = []
    for slot in d.slots():
        i, j = slot.over, slot.under
        if slot.sign > 0:
            rows.append([(j + 1, "-1"), (i, "A"), (j, "B")])
            rows.append([(i + 1, "-1"), (i, "C"), (j, "D")])
        else:
            rows.append([(i, "-1"), (j + 1, "A"), (i + 1, "B")])
            rows.append([(j, "-1"), (j + 1, "C"), (i + 1, "D")])
    return rows


def _check_kinds(d: LongDiagram, s: Switch) -> None:
    if d.kind == "flat" and s.kind != "flat":
        raise KindMismatchError(f"flat diagram needs a flat switch, {s.name} is {s.kind}")


def build_presentation(d: LongDiagram, s: Switch, variant: str = "M") -> PresentationMatrix:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    _check_kinds(d, s)
    rows = _crossing_entries(d)
    n = 2 * d.crossing_count
    if variant == "Mhat":
        rows.append([(0, "1"), (n, "-1")])
    elif variant == "Mo":
        rows.append([(0, "1")])
    elif variant == "Mn":
        rows.append([(n, "1")])
    return PresentationMatrix(variant, tuple(_relation(*r) for r in rows), n + 1, s, d)


def closed_presentation(d: LongDiagram, s: Switch) -> PresentationMatrix:
    """Presentation of the closed knot: x_n is identified with x_0."""
    _check_kinds(d, s)
    n = 2 * d.crossing_count
    rows = [_relation(*((0 if j == n else j, label) for j, label in r)) for r in _crossing_entries(d)]
    return PresentationMatrix("closed", tuple(rows), max(n, 1), s, d)


def closure_matches(d: LongDiagram, s: Switch) -> bool:
    """Merging the end columns of Mhat along its x_0 = x_n row gives the closed matrix."""
    hat = build_presentation(d, s, "Mhat")
    closed = closed_presentation(d, s)
    n = hat.generators - 1
    if n == 0:
        return closed.relation_count == 0
    merged = [_relation(*((0 if j == n else j, label) for j, labels in rel for label in labels)) for rel in hat.relations[:-1]]
    # blocks are sums, so compare label multisets
    as_sums = lambda rels: [[(j, sorted(labels)) for j, labels in rel] for rel in rels]  # noqa: E731
    return as_sums(merged) == as_sums(closed.relations)


# -- codimension determinants --------------------------------------------------------------


def _submatrix_choices(p: PresentationMatrix, r: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    keep = p.relation_count - r
    for rows in combinations(range(p.relation_count), keep):
        for cols in combinations(range(p.generators), keep):
            # a block row that misses every kept column forces a zero determinant
            if any(not any(j in cols for j, _ in p.relations[i]) for i in rows):
                continue
            yield rows, cols


def codim_dets(p: PresentationMatrix, r: int, algorithm: str = "bareiss") -> Iterator[LaurentPoly]:
    """Determinants of all codimension-r block submatrices, expanded over the Laurent ring."""
    for rows, cols in _submatrix_choices(p, r):
        yield determinant(p.to_matrix(rows, cols), algorithm)


def codim_det(p: PresentationMatrix, r: int = 0, mode: str | None = None, algorithm: str = "bareiss") -> UnitNormalForm:
    """Canonical gcd of the codimension-r determinants of p.

    Deleting more rows than p has gives the empty matrix, whose determinant is 1.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown determinant algorithm {algorithm!r}")
    if r < 0:
        raise ValueError("codimension must be nonnegative")
    mode = mode or p.switch.unit_mode
    one = LaurentPoly.one(p.switch.vars, p.switch.domain)
    if r >= p.relation_count:
        return canonicalize(one, mode)
    acc = GcdAccumulator(mode)
    for det in codim_dets(p, r, algorithm):
        acc.add(det)
        if acc.done:
            break
    if acc.value is None:
        # every submatrix had a zero block row
        return canonicalize(LaurentPoly.zero(p.switch.vars, p.switch.domain), mode)
    return acc.value


@dataclass(frozen=True)
class InvariantProfile:
    values: dict
    mode: str
    switch: str
    code: str

    def __getitem__(self, key: tuple[str, int]) -> UnitNormalForm:
        return self.values[key]

    def same_invariants(self, other: InvariantProfile) -> bool:
        return self.mode == other.mode and self.values == other.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantProfile):
            return NotImplemented
        return self.same_invariants(other)

    def __hash__(self) -> int:
        return hash((self.mode, tuple(sorted(self.values.items(), key=lambda kv: kv[0]))))

    def differences(self, other: InvariantProfile) -> list[tuple[str, int]]:
        keys = sorted(set(self.values) | set(other.values), key=_key_order)
        return [k for k in keys if self.values.get(k) != other.values.get(k)]

    def rows(self) -> list[tuple[str, int, str]]:
        return [(v, r, str(self.values[(v, r)])) for v, r in sorted(self.values, key=_key_order)]

    def to_dict(self) -> dict:
        return {
            "switch": self.switch,
            "code": self.code,
            "unit-mode": self.mode,
            "values": [{"variant": v, "codim": r, "polynomial": text} for v, r, text in self.rows()],
        }

    def __str__(self) -> str:
        return "\n".join(f"{v:>4} r={r}: {text}" for v, r, text in self.rows())


def _key_order(key: tuple[str, int]) -> tuple[int, int]:
    return key[1], VARIANTS.index(key[0])


def invariant_profile(
    d: LongDiagram,
    s: Switch,
    r_max: int = 0,
    mode: str | None = None,
    variants=VARIANTS,
    algorithm: str = "bareiss",
) -> InvariantProfile:
    mode = mode or s.unit_mode
    values = {}
    for v in variants:
        p = build_presentation(d, s, v)
        for r in range(r_max + 1):
            values[(v, r)] = codim_det(p, r, mode, algorithm)
    return InvariantProfile(values, mode, s.name, d.render())


# -- structural checks -----------------------------------------------------------------


def divides(a: UnitNormalForm, b: UnitNormalForm) -> bool:
    """a | b for canonical forms; zero divides only zero."""
    return laurent_divides(a.form, b.form)


@dataclass
class DivisibilityReport:
    code: str
    switch: str
    lines: list = field(default_factory=list)
    closure_ok: bool = True

    @property
    def passed(self) -> bool:
        return all(ok_o and ok_n for _, _, _, _, ok_o, ok_n in self.lines) and self.closure_ok

    def __str__(self) -> str:
        out = [f"divisibility for {self.code or '(empty)'} under {self.switch}"]
        for r, p, o, n, ok_o, ok_n in self.lines:
            out.append(f"  r={r}: p={p}  o={o} [{'ok' if ok_o else 'FAIL'}]  n={n} [{'ok' if ok_n else 'FAIL'}]")
        out.append(f"  closure presentation {'matches' if self.closure_ok else 'DIFFERS'}")
        return "\n".join(out)


def check_divisibility(d: LongDiagram, s: Switch, r_max: int = 0, mode: str | None = None) -> DivisibilityReport:
    """p^(r) divides the o- and n-variants for r = 0..r_max; Mhat is the closed knot's matrix."""
    if d.kind != "virtual":
        raise KindMismatchError("the divisibility check is stated for virtual diagrams")
    report = DivisibilityReport(d.render(), s.name)
    report.closure_ok = closure_matches(d, s)
    m = build_presentation(d, s, "M")
    mo = build_presentation(d, s, "Mo")
    mn = build_presentation(d, s, "Mn")
    for r in range(r_max + 1):
        p = codim_det(m, r, mode)
        o = codim_det(mo, r, mode)
        n = codim_det(mn, r, mode)
        report.lines.append((r, p, o, n, divides(p, o), divides(p, n)))
    return report


@dataclass
class ProductReport:
    left: str
    right: str
    switch: str
    lines: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.lines)

    def __str__(self) -> str:
        out = [f"product formula for ({self.left or '(empty)'}) . ({self.right or '(empty)'}) under {self.switch}"]
        for v, a, b, ab, ok in self.lines:
            out.append(f"  {v}: {a} * {b} vs {ab} [{'ok' if ok else 'FAIL'}]")
        return "\n".join(out)


def check_product_formula(k1: LongDiagram, k2: LongDiagram, s: Switch, mode: str | None = None) -> ProductReport:
    """Codimension-0 o- and n-determinants are multiplicative under concatenation."""
    if k1.kind != k2.kind:
        raise KindMismatchError("cannot concatenate diagrams of different kinds")
    mode = mode or s.unit_mode
    prod = concat(k1, k2)
    report = ProductReport(k1.render(), k2.render(), s.name)
    for v in ("Mo", "Mn"):
        a = codim_det(build_presentation(k1, s, v), 0, mode)
        b = codim_det(build_presentation(k2, s, v), 0, mode)
        ab = codim_det(build_presentation(prod, s, v), 0, mode)
        report.lines.append((v, a, b, ab, canonicalize(a.form * b.form, mode) == ab))
    return report


# -- invariance fuzzing ------------------------------------------------------------------


@dataclass
class FuzzMismatch:
    sequence: int
    seed: int
    moves: list[Move]
    diagram: LongDiagram
    expected: InvariantProfile
    found: InvariantProfile

    @property
    def changed(self) -> list[tuple[str, int]]:
        return self.found.differences(self.expected)


def fuzz_invariance(d: LongDiagram, s: Switch, sequences: int = 100, depth: int = 6, seed: int = 0, r_max: int = 0):
    """Compare profiles after random move sequences with the original one.

    Sequence k uses its own seed drawn from ``seed``, so any mismatch can be
    replayed from (seed, depth) alone.  Returns the base profile, the moved
    diagrams and the mismatches.
    """
    base = invariant_profile(d, s, r_max)
    master = random.Random(seed)
    moved, mismatches = [], []
    for k in range(sequences):
        sub = master.randrange(2**32)
        rng = random.Random(sub)
        e, trace = random_moves(d, rng.randint(1, depth), rng)
        moved.append(e)
        prof = invariant_profile(e, s, r_max)
        if prof != base:
            mismatches.append(FuzzMismatch(k, sub, trace, e, base, prof))
    return base, moved, mismatches
