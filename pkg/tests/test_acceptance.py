"""Acceptance criteria, one recorded PASS/FAIL line each.

Criteria whose published values could not be reproduced are marked
``xfail(strict=True)``: they still run, their line reads FAIL with the
reason, and an unexpected pass would turn the suite red.
"""

import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from helpers import ACCEPTANCE_LINES, rand_matrix, rand_poly, rand_quaternion, rand_unit
from longknots.diagram import BUILTIN_DIAGRAMS, builtin_diagram, concat, descent, random_moves, transform
from longknots.invariants import (
    VARIANTS,
    build_presentation,
    check_divisibility,
    check_product_formula,
    codim_det,
    fuzz_invariance,
    invariant_profile,
)
from longknots.matrix import determinant
from longknots.ring import GF2_DOMAIN, QQ, QQI, GaussianRational, canonicalize, parse_poly, quat_mul, quat_to_matrix
from longknots.switch import BUILTIN_SWITCHES, algebra_relation_holds, algebra_relation_sides, builtin_switch


def record(label: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def canon(text, variables=("t",), mode="field"):
    return canonicalize(parse_poly(text, variables), mode)


@lru_cache(maxsize=None)
def profile(code_key: str, switch: str, r_max: int = 0, mode: str = "field"):
    d = DIAGRAMS[code_key]
    return invariant_profile(d, builtin_switch(switch, unit_mode=mode), r_max)


F = builtin_diagram("fly")
F_BAR = transform(F, "reflect")
DIAGRAMS = {
    "F": F,
    "-F": transform(F, "mirror"),
    "Fbar": F_BAR,
    "-Fbar": transform(F_BAR, "mirror"),
    "F*": transform(F, "reverse"),
    "F.Fbar": concat(F, F_BAR),
    "Fbar.F": concat(F_BAR, F),
    "(F.Fbar).F": concat(concat(F, F_BAR), F),
    "F.(F.Fbar)": concat(F, concat(F, F_BAR)),
    "FF": builtin_diagram("flat-fly"),
    "FFbar": transform(builtin_diagram("flat-fly"), "reflect"),
    "d(FF)": descent(builtin_diagram("flat-fly")),
    "d(FFbar)": descent(transform(builtin_diagram("flat-fly"), "reflect")),
    "trefoil": builtin_diagram("virtual-trefoil-long"),
    "kishino": builtin_diagram("kishino-long"),
}


# -- 1 ------------------------------------------------------------------------------------

FLY_M = [
    ["-1", "B", "0", "A", "0"],
    ["0", "D", "-1", "C", "0"],
    ["0", "A", "0", "B", "-1"],
    ["0", "C", "-1", "D", "0"],
]
EXTRA = {"M": [], "Mhat": [["1", "0", "0", "0", "-1"]], "Mo": [["1", "0", "0", "0", "0"]], "Mn": [["0", "0", "0", "0", "1"]]}


def test_01_fly_block_patterns():
    bad = []
    for name in BUILTIN_SWITCHES:
        s = builtin_switch(name)
        for v in VARIANTS:
            if build_presentation(F, s, v).pattern() != FLY_M + EXTRA[v]:
                bad.append((name, v))
    record("1 fly block patterns", not bad, f"4 variants x {len(BUILTIN_SWITCHES)} switches exact" if not bad else f"mismatch {bad}")


# -- 2 ------------------------------------------------------------------------------------


def test_02_budapest_fly_values():
    p = profile("F", "budapest", 3)
    expect = {
        ("M", 0): canon("2 + t^-2"),
        ("Mhat", 0): canon("0"),
        ("Mo", 0): canon("(2 + t^-2)*(1 + 2*t^-2)"),
        ("Mn", 0): canon("(2 + t^-2)*(1 + 2*t^-2)"),
    }
    ok = all(p[k] == v for k, v in expect.items())
    ok &= all(p[(v, r)].is_one() for v in VARIANTS for r in (1, 2, 3))
    sizes = {v: build_presentation(F, builtin_switch("budapest"), v).to_matrix().shape for v in VARIANTS}
    record("2 budapest fly values", ok, f"p0={p[('M', 0)]}, p^0=0, o/n={p[('Mo', 0)]}, r=1..3 all 1; matrices {sizes['M']} and {sizes['Mo']}")


# -- 3 ------------------------------------------------------------------------------------


def test_03_weyl_table():
    q = ("q",)
    rows = {
        "F": ("1", "2 - q"),
        "-F": ("2 - q", "2 - q"),
        "Fbar": ("1", "2*q - 1"),
        "-Fbar": ("2*q - 1", "2*q - 1"),
    }
    bad, shown = [], []
    for key, (p0, o0) in rows.items():
        p = profile(key, "weyl-q")
        want = [canon(p0, q), canon("0", q), canon(o0, q), canon(o0, q)]
        got = [p[(v, 0)] for v in VARIANTS]
        shown.append(f"{key}: ({', '.join(str(g) for g in got)})")
        if got != want:
            bad.append(key)
    record("3 weyl-q table", not bad, "; ".join(shown) if not bad else f"rows differ: {bad}")


# -- 4 ------------------------------------------------------------------------------------


def test_04_fly_reverse_equals_reflect():
    ok = all(profile("F*", s, 1) == profile("Fbar", s, 1) for s in ("budapest", "weyl-q"))
    record("4 F* and Fbar profiles agree", ok, "budapest and weyl-q, codim 0..1")


# -- 5 ------------------------------------------------------------------------------------


def test_05a_concatenation_field_mode():
    a, b = profile("F.Fbar", "budapest")[("M", 0)], profile("Fbar.F", "budapest")[("M", 0)]
    ok = a == canon("6*t^4 + 15*t^2 + 6") and b == canon("3*t^4 + 15/2*t^2 + 3") and a == b
    record("5a F.Fbar and Fbar.F p0 in field mode", ok, f"both {a}")


@pytest.mark.xfail(strict=True, reason="both products have p0 = 2t^4+5t^2+2 with content 1; the published 2:1 content ratio does not reproduce")
def test_05b_concatenation_content_ratio():
    mode = "gaussian-integer"
    a = profile("F.Fbar", "budapest", 0, mode)[("M", 0)]
    b = profile("Fbar.F", "budapest", 0, mode)[("M", 0)]
    ratio = a.content / b.content
    record(
        "5b gaussian-integer contents differ by 2",
        ratio in (GaussianRational(2), GaussianRational(Fraction(1, 2))),
        f"found {a.form} and {b.form}, content ratio {ratio}; expected 6t^4+15t^2+6 vs 3t^4+15/2t^2+3 (see decisions ledger)",
    )


# -- 6 ------------------------------------------------------------------------------------


def _p1(key):
    return codim_det(build_presentation(DIAGRAMS[key], builtin_switch("budapest"), "M"), 1)


def test_06a_triple_products_codim0():
    t0 = time.time()
    want = canon("12*t^8 + 60*t^6 + 99*t^4 + 60*t^2 + 12")
    a = profile("(F.Fbar).F", "budapest")[("M", 0)]
    b = profile("F.(F.Fbar)", "budapest")[("M", 0)]
    record("6a triple products p0", a == want and b == want, f"both {a} ({time.time() - t0:.1f}s)")


def test_06b_triple_product_right_codim1():
    t0 = time.time()
    got = _p1("F.(F.Fbar)")
    ok = got == canon("(2*t^2 + 1)*(t^2 + 2)") and time.time() - t0 <= 60
    record("6b p1(F.(F.Fbar))", ok, f"{got} ({time.time() - t0:.1f}s)")


def test_06c_triple_products_distinct():
    a, b = _p1("(F.Fbar).F"), _p1("F.(F.Fbar)")
    record("6c triple product p1 values distinct", a != b, f"{a} vs {b}")


@pytest.mark.xfail(strict=True, reason="p1((F.Fbar).F) = 2t^2+1; codimension-1 minors do not vanish at t = i, so 9(t^2+1) cannot divide them")
def test_06d_triple_product_left_codim1():
    t0 = time.time()
    got = _p1("(F.Fbar).F")
    record("6d p1((F.Fbar).F) = 9(t^2+1)", got == canon("t^2 + 1"), f"found {got} ({time.time() - t0:.1f}s; see decisions ledger)")


# -- 7 ------------------------------------------------------------------------------------


def test_07_flat_fly_table():
    x = ("x",)

    def c(text):
        return canonicalize(parse_poly(text, x, GF2_DOMAIN))

    want = {
        "FF": [c("x^2 + 1"), c("0"), c("x^8 + x^6 + x^2 + 1"), c("x^8 + x^6 + x^2 + 1")],
        "FFbar": [c("x^6 + 1"), c("0"), c("x^8 + x^6 + x^2 + 1"), c("x^8 + x^6 + x^2 + 1")],
    }
    ok = True
    for key, vals in want.items():
        ok &= [profile(key, "flat-weyl")[(v, 0)] for v in VARIANTS] == vals
    ok &= profile("d(FF)", "flat-weyl") == profile("FF", "flat-weyl")
    # first-met-goes-over sends FFbar to the same code as FF, so its lift is
    # reported rather than compared with the FFbar row (see decisions ledger)
    lift = profile("d(FFbar)", "flat-weyl")[("M", 0)]
    record(
        "7 flat fly table and descent",
        ok,
        f"FF: x^2 + 1, FFbar: x^6 + 1, o/n x^8 + x^6 + x^2 + 1; d(FF) matches FF; d(FFbar) = {DIAGRAMS['d(FFbar)'].render()} gives p^0 = {lift}",
    )


# -- 8, 9 ---------------------------------------------------------------------------------


def test_08_virtual_trefoil():
    got = profile("trefoil", "budapest")[("Mhat", 0)]
    record("8 virtual trefoil closure", got == canon("1 + 2*t^2 + t^4"), f"{got} (no t -> 1/t needed)")


def test_09_kishino():
    p = profile("kishino", "budapest", 1)
    ok = p[("Mhat", 0)].is_zero() and p[("Mhat", 1)] == canon("1 + 5/2*t^2 + t^4")
    record("9 kishino", ok, f"p^0 = {p[('Mhat', 0)]}, p^1 = {p[('Mhat', 1)]} for {DIAGRAMS['kishino'].render()}")


# -- 10 -----------------------------------------------------------------------------------


def test_10a_switch_identities():
    notes = []
    ok = True
    for name in BUILTIN_SWITCHES:
        s = builtin_switch(name)
        lhs, rhs = s.yang_baxter_sides()
        ok &= lhs == rhs
        if s.kind == "flat":
            ok &= (s.matrix * s.matrix).is_identity()
            rel = algebra_relation_sides(s)
            ok &= rel[0].is_identity() and rel[1].is_identity()
        ok &= algebra_relation_holds(s)
        notes.append(name)
    record("10a YBE, S^2 and algebra relation", ok, ", ".join(notes))


def _pairs():
    for sname in BUILTIN_SWITCHES:
        s = builtin_switch(sname)
        for dname in BUILTIN_DIAGRAMS:
            d = builtin_diagram(dname)
            if d.kind == "flat" and s.kind != "flat":
                continue
            yield dname, sname


KNOWN_FUZZ_FAILURES = {("kishino-long", "budapest")}
FUZZ_PAIRS = [
    pytest.param(
        d,
        s,
        marks=pytest.mark.xfail(strict=True, reason="block-level codimension-0 gcd of M changes under r2 for this noncommutative switch; see decisions ledger"),
    )
    if (d, s) in KNOWN_FUZZ_FAILURES
    else (d, s)
    for d, s in _pairs()
]


@pytest.mark.parametrize("diagram, switch", FUZZ_PAIRS)
def test_10b_fuzz_invariance(diagram, switch):
    t0 = time.time()
    _, _, mismatches = fuzz_invariance(builtin_diagram(diagram), builtin_switch(switch), 100, 6, seed=2024)
    detail = f"{len(mismatches)}/100 mismatching sequences, depth <= 6 ({time.time() - t0:.1f}s)"
    if mismatches:
        m = mismatches[0]
        detail += f"; first: seed {m.seed}, {m.changed}"
    record(f"10b fuzz {diagram} x {switch}", not mismatches, detail)


DIVISIBILITY_SAMPLE = 10


@pytest.mark.parametrize("switch", BUILTIN_SWITCHES)
def test_10c_divisibility_on_fuzzed(switch):
    s = builtin_switch(switch)
    t0 = time.time()
    checked, failed, deep = 0, [], 0
    for dname in BUILTIN_DIAGRAMS:
        d = builtin_diagram(dname)
        if d.kind != "virtual":
            continue
        rng = random.Random(7)
        samples = [d] + [random_moves(d, rng.randint(1, 3), rng)[0] for _ in range(DIVISIBILITY_SAMPLE)]
        for e in samples:
            # codimension 2 is only affordable on small diagrams
            r_max = 2 if e.crossing_count <= 4 else 1
            deep += r_max == 2
            rep = check_divisibility(e, s, r_max)
            checked += 1
            if not rep.passed:
                failed.append(e.render())
    record(
        f"10c divisibility on fuzzed diagrams under {switch}",
        not failed,
        f"{checked} diagrams ({deep} at r <= 2, rest r <= 1), {len(failed)} failures ({time.time() - t0:.1f}s)",
    )


def test_10d_product_formula():
    count, bad = 0, []
    for sname in BUILTIN_SWITCHES:
        s = builtin_switch(sname)
        names = [n for n in BUILTIN_DIAGRAMS if builtin_diagram(n).kind == "virtual" or s.kind == "flat"]
        for a in names:
            for b in names:
                k1, k2 = builtin_diagram(a), builtin_diagram(b)
                if k1.kind != k2.kind:
                    continue
                count += 1
                if not check_product_formula(k1, k2, s).passed:
                    bad.append((a, b, sname))
    record("10d product formula", not bad, f"{count} ordered pairs, {len(bad)} failures")


def test_10e_bareiss_vs_cofactor():
    rng = random.Random(10)
    bad = 0
    for dom in (QQ, QQI, GF2_DOMAIN):
        for _ in range(200):
            n = rng.randint(1, 5)
            m = rand_matrix(rng, n, dom, ("x",) if dom is GF2_DOMAIN else ("t",))
            bad += determinant(m) != determinant(m, "cofactor")
    record("10e Bareiss equals cofactor", bad == 0, f"200 matrices per domain (rational, gaussian, gf2), {bad} disagreements")


def test_10f_quaternion_homomorphism():
    rng = random.Random(11)
    bad = 0
    for _ in range(100):
        p, q = rand_quaternion(rng), rand_quaternion(rng)
        bad += quat_to_matrix(quat_mul(p, q)) != quat_to_matrix(p) * quat_to_matrix(q)
    record("10f quaternion representation is multiplicative", bad == 0, f"100 random pairs, {bad} failures")


def test_10g_canonical_unit_invariance():
    rng = random.Random(12)
    bad = 0
    for k in range(100):
        dom = (QQ, QQI, GF2_DOMAIN)[k % 3]
        mode = "gaussian-integer" if k % 2 else "field"
        p = rand_poly(rng, dom, terms=4)
        bad += canonicalize(rand_unit(rng, dom, mode=mode) * p, mode) != canonicalize(p, mode)
    record("10g canonical form is unit invariant", bad == 0, f"100 random unit multiples, {bad} failures")
