"""Dense matrices over Laurent polynomial rings.

Determinants come from two independent algorithms: fraction-free Bareiss
elimination (the default) and Laplace expansion memoised over column subsets
(the cross-check).  Bareiss first scales every row by a monomial and a
denominator so that all entries are polynomials with integral coefficients;
for univariate rational or Gaussian entries it then runs on integers after
the Kronecker substitution t -> 2**k, which keeps everything in fast Python
big-integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .ring.coefficients import GF2_DOMAIN, QQ, QQI, Domain, GaussianRational, common_domain, lcm
from .ring.gcd import exact_divide
from .ring.laurent import LaurentPoly, VariableSetError


class DimensionError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    pass


class RingMatrix:
    """Immutable row-major matrix of LaurentPoly entries over one ring."""

    __slots__ = ("rows", "cols", "entries", "vars", "domain")

    def __init__(self, rows: int, cols: int, entries: Sequence[LaurentPoly], variables=None, domain=None):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        if entries:
            variables = entries[0].vars if variables is None else tuple(variables)
            dom = domain
            for e in entries:
                if e.vars != variables:
                    raise VariableSetError(f"matrix entries over {e.vars} and {variables}")
                dom = e.domain if dom is None else common_domain(dom, e.domain)
            domain = dom
            entries = tuple(e.with_domain(domain) for e in entries)
        else:
            variables = tuple(variables or ("t",))
            domain = domain or QQ
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("RingMatrix is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], variables=("t",), domain: Domain = QQ) -> RingMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        entries = [_as_poly(e, variables, domain) for r in rows for e in r]
        return cls(len(rows), ncols, entries, variables, domain if not entries else None)

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], variables=("t",), domain: Domain = QQ) -> RingMatrix:
        return cls.from_rows([[LaurentPoly.parse(s, variables, domain) for s in r] for r in rows], variables, domain)

    @classmethod
    def identity(cls, n: int, variables=("t",), domain: Domain = QQ) -> RingMatrix:
        one = LaurentPoly.one(variables, domain)
        zero = LaurentPoly.zero(variables, domain)
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], variables, domain)

    @classmethod
    def zeros(cls, rows: int, cols: int, variables=("t",), domain: Domain = QQ) -> RingMatrix:
        zero = LaurentPoly.zero(variables, domain)
        return cls(rows, cols, [zero] * (rows * cols), variables, domain)

    @classmethod
    def block(cls, grid: Sequence[Sequence[RingMatrix]]) -> RingMatrix:
        """Assemble a matrix from a rectangular grid of compatible blocks."""
        if not grid or not grid[0]:
            raise DimensionError("empty block grid")
        heights = [row[0].rows for row in grid]
        widths = [b.cols for b in grid[0]]
        out_rows = []
        for bi, row in enumerate(grid):
            if len(row) != len(widths):
                raise DimensionError("ragged block grid")
            for b, w in zip(row, widths):
                if b.rows != heights[bi] or b.cols != w:
                    raise DimensionError("block sizes do not line up")
            for r in range(heights[bi]):
                out_rows.append([e for b in row for e in b.row(r)])
        first = grid[0][0]
        domain = first.domain
        for row in grid:
            for b in row:
                domain = common_domain(domain, b.domain)
        return cls(len(out_rows), sum(widths), [e for r in out_rows for e in r], first.vars, domain)

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[LaurentPoly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> RingMatrix:
        rows, cols = list(rows), list(cols)
        e = self.entries
        c = self.cols
        return RingMatrix(len(rows), len(cols), [e[i * c + j] for i in rows for j in cols], self.vars, self.domain)

    def transpose(self) -> RingMatrix:
        return RingMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)], self.vars, self.domain)

    def with_domain(self, domain: Domain) -> RingMatrix:
        return RingMatrix(self.rows, self.cols, [e.with_domain(domain) for e in self.entries], self.vars, domain)

    def map(self, fn) -> RingMatrix:
        entries = [fn(e) for e in self.entries]
        return RingMatrix(self.rows, self.cols, entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_identity(self) -> bool:
        return self.is_square() and all(
            (e == 1) if i == j else e.is_zero()
            for k, e in enumerate(self.entries)
            for i, j in [divmod(k, self.cols)]
        )

    # -- arithmetic -------------------------------------------------------------

    def _same_shape(self, other: RingMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.vars != other.vars:
            raise VariableSetError(f"variable sets differ: {self.vars} vs {other.vars}")

    def __add__(self, other: RingMatrix) -> RingMatrix:
        self._same_shape(other)
        return RingMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: RingMatrix) -> RingMatrix:
        self._same_shape(other)
        return RingMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> RingMatrix:
        return RingMatrix(self.rows, self.cols, [-a for a in self.entries], self.vars, self.domain)

    def __mul__(self, other):
        if isinstance(other, RingMatrix):
            return mat_mul(self, other)
        return RingMatrix(self.rows, self.cols, [a * other for a in self.entries], self.vars)

    def __rmul__(self, other):
        return RingMatrix(self.rows, self.cols, [other * a for a in self.entries], self.vars)

    def __pow__(self, k: int) -> RingMatrix:
        if k < 0:
            return mat_inverse(self) ** (-k)
        out = RingMatrix.identity(self.rows, self.vars, self.domain)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self.vars == other.vars and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    # -- text -------------------------------------------------------------------

    def render(self) -> str:
        cells = [[str(e) for e in self.row(i)] for i in range(self.rows)]
        widths = [max((len(r[j]) for r in cells), default=0) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]" for r in cells)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RingMatrix({self.rows}x{self.cols}, vars={self.vars}, domain={self.domain.name})"


def _as_poly(e, variables, domain) -> LaurentPoly:
    if isinstance(e, LaurentPoly):
        return e
    if isinstance(e, str):
        return LaurentPoly.parse(e, variables, domain)
    return LaurentPoly.constant(e, variables, domain)


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.vars != b.vars:
        raise VariableSetError(f"variable sets differ: {a.vars} vs {b.vars}")
    domain = common_domain(a.domain, b.domain)
    zero = LaurentPoly.zero(a.vars, domain)
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = zero
            for k, x in enumerate(arow):
                if x:
                    y = b.entries[k * b.cols + j]
                    if y:
                        acc = acc + x * y
            out.append(acc)
    return RingMatrix(a.rows, b.cols, out, a.vars, domain)


# -- determinants ---------------------------------------------------------------

ALGORITHMS = ("bareiss", "cofactor")


def determinant(m: RingMatrix, algorithm: str = "bareiss") -> LaurentPoly:
    if not m.is_square():
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if algorithm == "bareiss":
        return _det_bareiss(m)
    if algorithm == "cofactor":
        return _det_cofactor(m)
    raise ValueError(f"unknown determinant algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def _det_cofactor(m: RingMatrix) -> LaurentPoly:
    n = m.rows
    one = LaurentPoly.one(m.vars, m.domain)
    zero = LaurentPoly.zero(m.vars, m.domain)
    if n == 0:
        return one
    entries = m.entries
    memo: dict[int, LaurentPoly] = {}

    # expand along row k = number of columns already used; mask = columns left
    def minor(mask: int) -> LaurentPoly:
        if mask == 0:
            return one
        hit = memo.get(mask)
        if hit is not None:
            return hit
        k = n - bin(mask).count("1")
        acc = zero
        sign = 1
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                e = entries[k * n + j]
                if e:
                    sub = minor(mask ^ bit)
                    if sub:
                        term = e * sub
                        acc = acc + term if sign > 0 else acc - term
                sign = -sign
        memo[mask] = acc
        return acc

    return minor((1 << n) - 1)


def _row_normalisers(m: RingMatrix):
    """Per-row (monomial shift, integer scale) making entries integral polynomials."""
    n = m.rows
    shifts = []
    scales = []
    for i in range(n):
        row = [e for e in m.row(i) if e]
        if not row:
            shifts.append((0,) * len(m.vars))
            scales.append(1)
            continue
        shift = tuple(min(col) for col in zip(*(e.min_exponents() for e in row)))
        shifts.append(shift)
        den = 1
        if m.domain is not GF2_DOMAIN:
            for e in row:
                for _, c in e.terms():
                    if isinstance(c, GaussianRational):
                        den = lcm(den, lcm(c.re.denominator, c.im.denominator))
                    else:
                        den = lcm(den, c.denominator)
        scales.append(den)
    return shifts, scales


def _det_bareiss(m: RingMatrix) -> LaurentPoly:
    n = m.rows
    if n == 0:
        return LaurentPoly.one(m.vars, m.domain)
    shifts, scales = _row_normalisers(m)
    total_shift = tuple(sum(col) for col in zip(*shifts))
    total_scale = math.prod(scales)
    rows = []
    for i in range(n):
        neg = tuple(-s for s in shifts[i])
        row = {}
        for j, e in enumerate(m.row(i)):
            if e:
                row[j] = e.shift(neg) * scales[i] if scales[i] != 1 else e.shift(neg)
        rows.append(row)
    if len(m.vars) == 1 and m.domain in (QQ, QQI):
        det = _bareiss_kronecker(rows, n, m.vars, m.domain)
    elif len(m.vars) == 1 and m.domain is GF2_DOMAIN:
        det = _bareiss_gf2x(rows, n, m.vars)
    else:
        det = _bareiss_poly(rows, n, m.vars, m.domain)
    if total_scale != 1:
        det = det.scale(Fraction(1, total_scale))
    return det.shift(total_shift)


def _pick_pivot(rows: list[dict], k: int, n: int) -> int | None:
    best = None
    best_len = None
    for r in range(k, n):
        if k in rows[r]:
            size = len(rows[r])
            if best is None or size < best_len:
                best, best_len = r, size
    return best


def _bareiss_poly(rows: list[dict], n: int, variables, domain) -> LaurentPoly:
    """Fraction-free elimination directly on LaurentPoly entries."""
    one = LaurentPoly.one(variables, domain)
    prev = one
    sign = 1
    for k in range(n):
        p = _pick_pivot(rows, k, n)
        if p is None:
            return LaurentPoly.zero(variables, domain)
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pivot_row = rows[k]
        pivot = pivot_row[k]
        for i in range(k + 1, n):
            row = rows[i]
            a_ik = row.pop(k, None)
            new = {}
            if a_ik is None:
                for j, v in row.items():
                    new[j] = exact_divide(pivot * v, prev)
            else:
                for j in set(row) | set(pivot_row):
                    if j <= k:
                        continue
                    v = pivot * row[j] if j in row else None
                    w = a_ik * pivot_row[j] if j in pivot_row else None
                    val = v - w if v is not None and w is not None else v if v is not None else -w
                    if val:
                        new[j] = exact_divide(val, prev)
            rows[i] = {j: v for j, v in new.items() if v}
        prev = pivot
    det = rows[n - 1][n - 1]
    return det if sign > 0 else -det


def _coefficient_bound(rows: list[dict], gaussian: bool) -> int:
    """Bound on |coefficient| (real and imaginary parts) of the determinant."""
    bound = 1
    for row in rows:
        total = 0
        for e in row.values():
            for _, c in e.terms():
                if gaussian:
                    total += abs(c.re) + abs(c.im)
                else:
                    total += abs(c)
        bound *= max(int(total), 1)
    return bound


def _bareiss_kronecker(rows: list[dict], n: int, variables, domain) -> LaurentPoly:
    gaussian = domain is QQI
    bound = _coefficient_bound(rows, gaussian)
    k = (2 * bound + 1).bit_length() + 1
    if gaussian:
        ints = []
        for row in rows:
            packed = {}
            for j, e in row.items():
                re = im = 0
                for (d,), c in e.terms():
                    re += int(c.re) << (k * d)
                    im += int(c.im) << (k * d)
                packed[j] = (re, im)
            ints.append(packed)
        re, im = _bareiss_gaussian_int(ints, n)
        re_digits = _unpack(re, k)
        im_digits = _unpack(im, k)
        size = max(len(re_digits), len(im_digits))
        re_digits += [0] * (size - len(re_digits))
        im_digits += [0] * (size - len(im_digits))
        terms = {(d,): GaussianRational(a, b) for d, (a, b) in enumerate(zip(re_digits, im_digits)) if a or b}
    else:
        ints = []
        for row in rows:
            packed = {}
            for j, e in row.items():
                v = 0
                for (d,), c in e.terms():
                    v += int(c) << (k * d)
                packed[j] = v
            ints.append(packed)
        value = _bareiss_int(ints, n)
        terms = {(d,): c for d, c in enumerate(_unpack(value, k)) if c}
    return LaurentPoly(terms, variables, domain)


def _clmul(a: int, b: int) -> int:
    """Product in GF(2)[x] with polynomials stored as bit masks."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def _cldiv_exact(a: int, b: int) -> int:
    q = 0
    db = b.bit_length()
    while a:
        shift = a.bit_length() - db
        if shift < 0:
            raise ArithmeticError("inexact division in GF(2)[x]")
        q ^= 1 << shift
        a ^= b << shift
    return q


def _bareiss_gf2x(rows: list[dict], n: int, variables) -> LaurentPoly:
    ints = []
    for row in rows:
        packed = {}
        for j, e in row.items():
            v = 0
            for (d,), _ in e.terms():
                v |= 1 << d
            packed[j] = v
        ints.append(packed)
    prev = 1
    for k in range(n):
        p = _pick_pivot(ints, k, n)
        if p is None:
            return LaurentPoly.zero(variables, GF2_DOMAIN)
        ints[k], ints[p] = ints[p], ints[k]
        pivot_row = ints[k]
        pivot = pivot_row[k]
        for i in range(k + 1, n):
            row = ints[i]
            a_ik = row.pop(k, 0)
            new = {}
            for j in set(row) | set(pivot_row):
                if j <= k:
                    continue
                val = _clmul(pivot, row.get(j, 0)) ^ _clmul(a_ik, pivot_row.get(j, 0))
                if val:
                    new[j] = _cldiv_exact(val, prev) if prev != 1 else val
            ints[i] = new
        prev = pivot
    det = ints[n - 1].get(n - 1, 0)
    terms = {}
    d = 0
    while det:
        if det & 1:
            terms[(d,)] = 1
        det >>= 1
        d += 1
    return LaurentPoly(terms, variables, GF2_DOMAIN)


def _unpack(value: int, k: int) -> list[int]:
    """Balanced base-2**k digits of a packed polynomial value."""
    digits = []
    base = 1 << k
    half = base >> 1
    mask = base - 1
    while value:
        d = value & mask
        if d >= half:
            d -= base
        digits.append(d)
        value = (value - d) >> k
    return digits


def _bareiss_int(rows: list[dict], n: int) -> int:
    prev = 1
    sign = 1
    for k in range(n):
        p = _pick_pivot(rows, k, n)
        if p is None:
            return 0
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pivot_row = rows[k]
        pivot = pivot_row[k]
        for i in range(k + 1, n):
            row = rows[i]
            a_ik = row.pop(k, 0)
            if not a_ik:
                if pivot != prev:
                    rows[i] = {j: pivot * v // prev for j, v in row.items()}
                continue
            new = {}
            for j, v in row.items():
                new[j] = pivot * v
            for j, w in pivot_row.items():
                if j > k:
                    new[j] = new.get(j, 0) - a_ik * w
            rows[i] = {j: v // prev for j, v in new.items() if v}
        prev = pivot
    return sign * rows[n - 1][n - 1]


def _bareiss_gaussian_int(rows: list[dict], n: int) -> tuple[int, int]:
    prev = (1, 0)
    sign = 1
    for k in range(n):
        p = _pick_pivot(rows, k, n)
        if p is None:
            return (0, 0)
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pivot_row = rows[k]
        a, b = pivot_row[k]
        pc, pd = prev
        norm = pc * pc + pd * pd
        same = (a, b) == prev

        def divide(x: int, y: int) -> tuple[int, int]:
            # (x + yi) / (pc + pd i), known to be exact
            if pd == 0:
                return x // pc, y // pc
            return (x * pc + y * pd) // norm, (y * pc - x * pd) // norm

        for i in range(k + 1, n):
            row = rows[i]
            a_ik = row.pop(k, None)
            if a_ik is None:
                if not same:
                    rows[i] = {j: divide(a * x - b * y, a * y + b * x) for j, (x, y) in row.items()}
                continue
            c, d = a_ik
            new = {}
            for j, (x, y) in row.items():
                new[j] = (a * x - b * y, a * y + b * x)
            for j, (e, f) in pivot_row.items():
                if j > k:
                    x, y = new.get(j, (0, 0))
                    new[j] = (x - (c * e - d * f), y - (c * f + d * e))
            out = {}
            for j, (x, y) in new.items():
                if x or y:
                    out[j] = divide(x, y)
            rows[i] = out
        prev = (a, b)
    re, im = rows[n - 1][n - 1]
    return sign * re, sign * im


# -- inverses -------------------------------------------------------------------


def adjugate(m: RingMatrix) -> RingMatrix:
    n = m.rows
    if n == 1:
        return RingMatrix.identity(1, m.vars, m.domain)
    out = []
    for i in range(n):
        for j in range(n):
            # (i, j) entry is the (j, i) cofactor
            minor = m.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            d = determinant(minor)
            out.append(d if (i + j) % 2 == 0 else -d)
    return RingMatrix(n, n, out, m.vars, m.domain)


def mat_inverse(m: RingMatrix) -> RingMatrix:
    """Inverse over the Laurent ring; raises NotInvertibleError unless det is a unit."""
    if not m.is_square():
        raise DimensionError(f"inverse of a non-square {m.rows}x{m.cols} matrix")
    d = determinant(m)
    if not d.is_unit():
        raise NotInvertibleError(f"determinant {d} is not a unit")
    inv = d.unit_inverse()
    return RingMatrix(m.rows, m.cols, [e * inv for e in adjugate(m).entries], m.vars, m.domain)


def is_invertible(m: RingMatrix) -> bool:
    return m.is_square() and determinant(m).is_unit()
