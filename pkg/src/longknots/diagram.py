"""Long virtual and flat knot diagrams written as signed Gauss-style codes.

A code lists the passages met while travelling from the input end to the
output end, e.g. ``O1- O2+ U1- U2+``.  Classical passages are ``O``/``U`` with
a sign, virtual passages ``V`` and flat passages ``L``/``R``.  Only classical
and flat passages cut the strand into semi-arcs; a diagram with c such
crossings has semi-arcs x_0 .. x_n with n = 2c.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

CLASSICAL_ROLES = ("O", "U")
FLAT_ROLES = ("L", "R")
VIRTUAL_ROLE = "V"
KINDS = ("virtual", "flat")
MOVES = ("r1", "r2", "v1", "v2")
TRANSFORMS = ("mirror", "reflect", "reverse")


class DiagramError(ValueError):
    """A code that breaks the pairing rules of a long diagram."""


class DiagramParseError(DiagramError):
    def __init__(self, message: str, token_index: int | None = None, token: str | None = None) -> None:
        where = f" (token {token_index + 1}: {token!r})" if token_index is not None else ""
        super().__init__(message + where)
        self.token_index = token_index
        self.token = token


class DiagramKindError(DiagramError):
    """An operation met a flat diagram where a virtual one was needed, or vice versa."""


@dataclass(frozen=True)
class Passage:
    crossing: int
    role: str
    sign: int | None = None

    def __post_init__(self) -> None:
        if self.role in CLASSICAL_ROLES:
            if self.sign not in (1, -1):
                raise DiagramError(f"classical passage {self.role}{self.crossing} needs a sign")
        elif self.role in FLAT_ROLES or self.role == VIRTUAL_ROLE:
            if self.sign is not None:
                raise DiagramError(f"passage {self.role}{self.crossing} cannot carry a sign")
        else:
            raise DiagramError(f"unknown passage role {self.role!r}")
        if not isinstance(self.crossing, int) or self.crossing < 1:
            raise DiagramError(f"crossing ids are positive integers, got {self.crossing!r}")

    @property
    def is_virtual(self) -> bool:
        return self.role == VIRTUAL_ROLE

    @property
    def token(self) -> str:
        if self.sign is None:
            return f"{self.role}{self.crossing}"
        return f"{self.role}{self.crossing}{'+' if self.sign > 0 else '-'}"

    def relabel(self, crossing: int) -> Passage:
        return Passage(crossing, self.role, self.sign)


@dataclass(frozen=True)
class CrossingSlot:
    """Where a classical or flat crossing sits along the strand.

    ``over`` and ``under`` are the indices of the incoming semi-arcs of the
    over (first-role) and under (second-role) passages; the outgoing arcs are
    the next indices.  Flat crossings carry sign +1.
    """

    crossing: int
    over: int
    under: int
    sign: int


@dataclass(frozen=True)
class LongDiagram:
    passages: tuple[Passage, ...] = ()
    kind: str = "virtual"

    def __post_init__(self) -> None:
        object.__setattr__(self, "passages", tuple(self.passages))
        if self.kind not in KINDS:
            raise DiagramError(f"unknown diagram kind {self.kind!r}")
        _check_pairing(self.passages, self.kind)

    # -- structure ---------------------------------------------------------------------

    @property
    def crossings(self) -> tuple[int, ...]:
        """Classical or flat crossing ids in order of first appearance."""
        seen: dict[int, None] = {}
        for p in self.passages:
            if not p.is_virtual:
                seen.setdefault(p.crossing)
        return tuple(seen)

    @property
    def virtual_crossings(self) -> tuple[int, ...]:
        seen: dict[int, None] = {}
        for p in self.passages:
            if p.is_virtual:
                seen.setdefault(p.crossing)
        return tuple(seen)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def semi_arc_count(self) -> int:
        return 2 * self.crossing_count + 1

    @property
    def max_id(self) -> int:
        return max((p.crossing for p in self.passages), default=0)

    def slots(self) -> list[CrossingSlot]:
        where: dict[int, dict[str, int]] = {}
        signs: dict[int, int] = {}
        arc = 0
        for p in self.passages:
            if p.is_virtual:
                continue
            role = "over" if p.role in ("O", "L") else "under"
            where.setdefault(p.crossing, {})[role] = arc
            signs[p.crossing] = p.sign if p.sign is not None else 1
            arc += 1
        return [CrossingSlot(c, where[c]["over"], where[c]["under"], signs[c]) for c in self.crossings]

    # -- text --------------------------------------------------------------------------

    def render(self) -> str:
        return " ".join(p.token for p in self.passages)

    @property
    def code(self) -> str:
        return self.render()

    def __str__(self) -> str:
        return self.render() or "(empty)"

    def relabelled(self, mapping) -> LongDiagram:
        return LongDiagram(tuple(p.relabel(mapping(p.crossing)) for p in self.passages), self.kind)

    def normalised(self) -> LongDiagram:
        """Renumber crossings 1, 2, ... in order of first appearance."""
        order: dict[int, int] = {}
        for p in self.passages:
            order.setdefault(p.crossing, len(order) + 1)
        return self.relabelled(order.__getitem__)


def _check_pairing(passages: Sequence[Passage], kind: str) -> None:
    by_id: dict[int, list[Passage]] = {}
    for p in passages:
        by_id.setdefault(p.crossing, []).append(p)
        if kind == "flat" and p.role in CLASSICAL_ROLES:
            raise DiagramError(f"flat diagram contains classical passage {p.token}")
        if kind == "virtual" and p.role in FLAT_ROLES:
            raise DiagramError(f"virtual diagram contains flat passage {p.token}")
    for cid, ps in by_id.items():
        if len(ps) != 2:
            raise DiagramError(f"crossing {cid} appears {len(ps)} time{'s' if len(ps) != 1 else ''}, expected 2")
        roles = sorted(p.role for p in ps)
        if roles == ["O", "U"]:
            if ps[0].sign != ps[1].sign:
                raise DiagramError(f"sign mismatch at crossing {cid}")
        elif roles == ["L", "R"] or roles == ["V", "V"]:
            pass
        elif set(roles) & {"V"}:
            raise DiagramError(f"crossing {cid} mixes virtual and non-virtual passages")
        elif set(roles) <= {"O", "U"}:
            raise DiagramError(f"crossing {cid} needs one O and one U passage, got {roles[0]} twice")
        elif set(roles) <= {"L", "R"}:
            raise DiagramError(f"crossing {cid} needs one L and one R passage, got {roles[0]} twice")
        else:
            raise DiagramError(f"crossing {cid} mixes flat and classical passages")


def _parse_token(tok: str, index: int) -> Passage:
    role = tok[0]
    if role in CLASSICAL_ROLES:
        body, sign_char = tok[1:-1], tok[-1:]
        if sign_char not in ("+", "-"):
            raise DiagramParseError("classical passage needs a trailing + or -", index, tok)
        sign = 1 if sign_char == "+" else -1
    elif role in FLAT_ROLES or role == VIRTUAL_ROLE:
        body, sign = tok[1:], None
    else:
        raise DiagramParseError("unknown token", index, tok)
    if not body.isdigit() or int(body) < 1 or body != str(int(body)):
        raise DiagramParseError("crossing id must be a positive integer", index, tok)
    return Passage(int(body), role, sign)


def parse_code(text: str, kind: str | None = None) -> LongDiagram:
    """Parse a whitespace-separated passage code.

    The kind is inferred (flat iff some ``L``/``R`` passage appears) unless given.
    """
    passages = tuple(_parse_token(tok, k) for k, tok in enumerate(text.split()))
    if kind is None:
        kind = "flat" if any(p.role in FLAT_ROLES for p in passages) else "virtual"
    return LongDiagram(passages, kind)


# -- transforms ----------------------------------------------------------------------


_SWAP = {"O": "U", "U": "O", "L": "R", "R": "L", "V": "V"}


def _flip(p: Passage) -> Passage:
    return Passage(p.crossing, p.role, -p.sign if p.sign is not None else None)


def _swap(p: Passage) -> Passage:
    return Passage(p.crossing, _SWAP[p.role], p.sign)


def transform(d: LongDiagram, op: str) -> LongDiagram:
    """Symmetry operations -D (mirror), D-bar (reflect) and D* (reverse).

    mirror flips every sign and keeps over/under; it fixes flat diagrams.
    reflect swaps over and under (L and R when flat) and flips every sign.
    reverse reads the passages backwards.  The sign and role conventions were
    fixed by matching the quantum Weyl table for the fly.
    """
    if op == "mirror":
        return LongDiagram(tuple(_flip(p) for p in d.passages), d.kind)
    if op == "reflect":
        return LongDiagram(tuple(_flip(_swap(p)) for p in d.passages), d.kind)
    if op == "reverse":
        return LongDiagram(tuple(reversed(d.passages)), d.kind)
    raise ValueError(f"unknown transform {op!r}; expected one of {', '.join(TRANSFORMS)}")


def concat(k1: LongDiagram, k2: LongDiagram) -> LongDiagram:
    """Join the output end of k1 to the input end of k2."""
    if k1.kind != k2.kind:
        raise DiagramKindError(f"cannot concatenate a {k1.kind} diagram with a {k2.kind} diagram")
    offset = k1.max_id
    return LongDiagram(k1.passages + tuple(p.relabel(p.crossing + offset) for p in k2.passages), k1.kind)


def concat_all(diagrams: Iterable[LongDiagram]) -> LongDiagram:
    diagrams = list(diagrams)
    if not diagrams:
        return LongDiagram()
    out = diagrams[0]
    for d in diagrams[1:]:
        out = concat(out, d)
    return out


def descent(d: LongDiagram) -> LongDiagram:
    """Lift a flat diagram: the first passage met at each crossing goes over, sign +1."""
    if d.kind != "flat":
        raise DiagramKindError("descent applies to flat diagrams only")
    seen: set[int] = set()
    out = []
    for p in d.passages:
        if p.is_virtual:
            out.append(p)
        elif p.crossing in seen:
            out.append(Passage(p.crossing, "U", 1))
        else:
            seen.add(p.crossing)
            out.append(Passage(p.crossing, "O", 1))
    return LongDiagram(tuple(out), "virtual")


# -- Reidemeister moves ----------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """A replayable record of one perturbation."""

    name: str
    p: int
    q: int
    variant: int

    def __str__(self) -> str:
        return f"{self.name}(p={self.p}, q={self.q}, variant={self.variant})"


def _insert(passages: tuple[Passage, ...], p: int, first: list[Passage], q: int, second: list[Passage]):
    out = list(passages)
    # insert at the later position first so the earlier index stays valid
    if q >= p:
        out[q:q] = second
        out[p:p] = first
    else:
        out[p:p] = first
        out[q:q] = second
    return tuple(out)


def perturb(
    d: LongDiagram,
    move: str,
    p: int | None = None,
    q: int | None = None,
    variant: int | None = None,
    seed: int | random.Random | None = None,
) -> LongDiagram:
    """Apply one generalised Reidemeister move that creates crossings.

    Positions are gaps in the passage list, 0 .. len(passages).  Missing
    parameters are drawn from ``seed``.

    r1: a kink, two adjacent passages of one new crossing; variant bit 1
        picks which role comes first and bit 0 the sign.
    r2: a bigon.  Geometrically one strand passes over new crossings c, d
        (signs e, -e) at p and the other passes under them at q, in the
        order c, d (variant bit 1, parallel strands) or d, c.  Bit 0 picks e.
        In a code the roles of the negative crossing are exchanged, so for
        e = +1 the antiparallel move reads ``O c+ U d-`` at p, ``O d- U c+`` at q.
        Flat diagrams use the same passages with L/R and no signs.
    v1: ``V c V c`` at p.
    v2: ``V c V d`` at p and ``V d V c`` at q (or ``V c V d`` when variant is 1).
    """
    return apply_move(d, make_move(d, move, p, q, variant, seed))


def make_move(d, move, p=None, q=None, variant=None, seed=None) -> Move:
    if move not in MOVES:
        raise ValueError(f"unknown move {move!r}; expected one of {', '.join(MOVES)}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    size = len(d.passages)
    if p is None:
        p = rng.randint(0, size)
    if q is None:
        q = rng.randint(0, size)
    if variant is None:
        variant = rng.randrange(4 if move in ("r1", "r2") else 2)
    return Move(move, p, q, variant)


def apply_move(d: LongDiagram, m: Move) -> LongDiagram:
    size = len(d.passages)
    for pos in (m.p, m.q):
        if not 0 <= pos <= size:
            raise ValueError(f"position {pos} outside 0..{size}")
    c, e = d.max_id + 1, d.max_id + 2
    flat = d.kind == "flat"
    eps = 1 if m.variant & 1 else -1

    def cl(cid: int, role: str, sign: int) -> Passage:
        # Codes exchange O and U at negative crossings relative to the usual
        # picture, so a geometric over-passage of a negative crossing is "U".
        if sign < 0:
            role = "U" if role == "O" else "O"
        if flat:
            return Passage(cid, "L" if role == "O" else "R")
        return Passage(cid, role, sign)

    if m.name == "r1":
        first = "O" if m.variant & 2 else "U"
        second = "U" if first == "O" else "O"
        new = _insert(d.passages, m.p, [cl(c, first, eps), cl(c, second, eps)], m.p, [])
    elif m.name == "r2":
        over = [cl(c, "O", eps), cl(e, "O", -eps)]
        if m.variant & 2:
            under = [cl(c, "U", eps), cl(e, "U", -eps)]
        else:
            under = [cl(e, "U", -eps), cl(c, "U", eps)]
        new = _insert(d.passages, m.p, over, m.q, under)
    elif m.name == "v1":
        new = _insert(d.passages, m.p, [Passage(c, "V"), Passage(c, "V")], m.p, [])
    elif m.name == "v2":
        pair = [Passage(c, "V"), Passage(e, "V")]
        new = _insert(d.passages, m.p, pair, m.q, pair if m.variant & 1 else pair[::-1])
    else:
        raise ValueError(f"unknown move {m.name!r}")
    return LongDiagram(new, d.kind)


def random_moves(d: LongDiagram, depth: int, rng: random.Random, moves: Sequence[str] = MOVES):
    """Apply ``depth`` random moves; return the final diagram and the move trace."""
    trace = []
    for _ in range(depth):
        m = make_move(d, rng.choice(list(moves)), seed=rng)
        d = apply_move(d, m)
        trace.append(m)
    return d, trace


def replay(d: LongDiagram, trace: Iterable[Move]) -> LongDiagram:
    for m in trace:
        d = apply_move(d, m)
    return d


# -- fixtures --------------------------------------------------------------------------

# The fly F, its flat shadow, and the long virtual trefoil.
_BUILTIN_CODES = {
    "fly": "O1- O2+ U1- U2+",
    "flat-fly": "L1 L2 R1 R2",
    "virtual-trefoil-long": "O1+ O2+ U1+ U2+",
    # Long Kishino knot: the fly followed by its mirror, F . (-F).  The closure
    # has vanishing Budapest determinant and codimension-1 polynomial
    # 1 + 5/2 t^2 + t^4, the published values.
    "kishino-long": "O1- O2+ U1- U2+ O3+ O4- U3+ U4-",
    "empty": "",
}
BUILTIN_DIAGRAMS = tuple(_BUILTIN_CODES)


def builtin_diagram(name: str) -> LongDiagram:
    if name not in _BUILTIN_CODES:
        raise KeyError(f"unknown diagram {name!r}; built-ins are {', '.join(BUILTIN_DIAGRAMS)}")
    return parse_code(_BUILTIN_CODES[name], "flat" if name == "flat-fly" else "virtual")


# Equivalent pairs related by moves the fuzzer does not generate.
# r3: a braid-like triangle of positive crossings 1 (a over b), 2 (a over c)
# and 3 (b over c); the move reverses the order of the crossings along each
# of the strands a, b, c.  A fly (crossings 4, 5) is threaded between them.
# detour: the strand segment between crossings is rerouted through a region
# of virtual crossings.
EQUIVALENT_PAIRS = {
    "r3": (
        "O1+ O2+ O4- O5+ U1+ O3+ U4- U5+ U2+ U3+",
        "O2+ O1+ O4- O5+ O3+ U1+ U4- U5+ U3+ U2+",
    ),
    "detour": (
        "O1- O2+ U1- U2+",
        "O1- V5 O2+ V6 V7 U1- V5 V7 U2+ V6",
    ),
}
