import random

import pytest

from longknots.diagram import EQUIVALENT_PAIRS, builtin_diagram, concat, parse_code, perturb, transform
from longknots.invariants import (
    VARIANTS,
    KindMismatchError,
    build_presentation,
    check_divisibility,
    check_product_formula,
    closed_presentation,
    closure_matches,
    codim_det,
    codim_dets,
    divides,
    invariant_profile,
)
from longknots.matrix import determinant
from longknots.ring import canonicalize, parse_poly
from longknots.switch import BUILTIN_SWITCHES, builtin_switch

FLY_M = [
    ["-1", "B", "0", "A", "0"],
    ["0", "D", "-1", "C", "0"],
    ["0", "A", "0", "B", "-1"],
    ["0", "C", "-1", "D", "0"],
]
EXTRA_ROW = {"M": None, "Mhat": ["1", "0", "0", "0", "-1"], "Mo": ["1", "0", "0", "0", "0"], "Mn": ["0", "0", "0", "0", "1"]}


def canon(text, variables=("t",)):
    return canonicalize(parse_poly(text, variables))


@pytest.mark.parametrize("variant", VARIANTS)
def test_fly_block_pattern(variant):
    p = build_presentation(builtin_diagram("fly"), builtin_switch("budapest"), variant)
    expected = FLY_M + ([EXTRA_ROW[variant]] if EXTRA_ROW[variant] else [])
    assert p.pattern() == expected


def test_presentation_shapes():
    s = builtin_switch("weyl-q")
    d = builtin_diagram("kishino-long")
    assert build_presentation(d, s, "M").shape == (8, 9)
    for v in ("Mhat", "Mo", "Mn"):
        assert build_presentation(d, s, v).shape == (9, 9)
    assert build_presentation(builtin_diagram("empty"), s, "M").shape == (0, 1)


def test_kink_blocks_are_sums():
    d = perturb(builtin_diagram("empty"), "r1", p=0, variant=3)
    p = build_presentation(d, builtin_switch("budapest"), "M")
    assert any("-1" in x and len(x) > 2 for row in p.pattern() for x in row)


def test_expanded_matrix_size():
    p = build_presentation(builtin_diagram("fly"), builtin_switch("budapest"), "M")
    m = p.to_matrix()
    assert m.shape == (8, 10)
    assert p.block(0, 1) == builtin_switch("budapest").B


def test_kind_mismatch():
    with pytest.raises(KindMismatchError):
        build_presentation(builtin_diagram("flat-fly"), builtin_switch("budapest"))
    # an involutory switch is also a virtual switch, as the descent map needs
    assert build_presentation(builtin_diagram("fly"), builtin_switch("flat-weyl")).shape == (4, 5)


def test_fly_budapest_codim_values():
    s = builtin_switch("budapest")
    fly = builtin_diagram("fly")
    assert codim_det(build_presentation(fly, s, "M"), 0) == canon("2 + t^-2")
    assert codim_det(build_presentation(fly, s, "Mhat"), 0).is_zero()
    for v in VARIANTS:
        for r in (1, 2, 5):
            assert codim_det(build_presentation(fly, s, v), r).is_one()


def test_codim_dets_match_cofactor():
    s = builtin_switch("budapest")
    p = build_presentation(builtin_diagram("virtual-trefoil-long"), s, "M")
    fast = list(codim_dets(p, 1))
    slow = list(codim_dets(p, 1, algorithm="cofactor"))
    assert fast == slow and fast


def test_weyl_fly_profile():
    prof = invariant_profile(builtin_diagram("fly"), builtin_switch("weyl-q"), 0)
    q = ("q",)
    assert [prof[(v, 0)] for v in VARIANTS] == [canon("1", q), canon("0", q), canon("2 - q", q), canon("2 - q", q)]
    mirror = invariant_profile(transform(builtin_diagram("fly"), "mirror"), builtin_switch("weyl-q"), 0)
    assert mirror[("M", 0)] == canon("2 - q", q)


@pytest.mark.parametrize("name", BUILTIN_SWITCHES)
def test_empty_diagram_profile(name):
    s = builtin_switch(name)
    d = parse_code("", s.kind)
    prof = invariant_profile(d, s, 1)
    assert prof[("M", 0)].is_one()
    assert prof[("Mo", 0)].is_one() and prof[("Mn", 0)].is_one()
    # the closing relation x0 = x0 is vacuous, so the closed module is free
    assert prof[("Mhat", 0)].is_zero()


def test_profile_serialisation():
    prof = invariant_profile(builtin_diagram("fly"), builtin_switch("budapest"), 1)
    doc = prof.to_dict()
    assert doc["switch"] == "budapest" and doc["code"] == "O1- O2+ U1- U2+"
    for row in doc["values"]:
        assert canonicalize(parse_poly(row["polynomial"], ("t",), prof[(row["variant"], row["codim"])].form.domain)) == prof[
            (row["variant"], row["codim"])
        ]
    assert prof.differences(prof) == []
    assert "Mhat" in str(prof)


def test_closure_consistency():
    s = builtin_switch("budapest")
    for name in ("fly", "virtual-trefoil-long", "kishino-long"):
        d = builtin_diagram(name)
        assert closure_matches(d, s)
        assert codim_det(closed_presentation(d, s), 0) == codim_det(build_presentation(d, s, "Mhat"), 0)


@pytest.mark.parametrize("switch", ["budapest", "weyl-q", "alexander-spec"])
@pytest.mark.parametrize("name", ["fly", "virtual-trefoil-long", "kishino-long", "empty"])
def test_divisibility_builtins(switch, name):
    assert check_divisibility(builtin_diagram(name), builtin_switch(switch), 1).passed


def test_divisibility_rejects_flat():
    with pytest.raises(KindMismatchError):
        check_divisibility(builtin_diagram("flat-fly"), builtin_switch("flat-weyl"))


def test_divides_zero_convention():
    zero, one = canon("0"), canon("1")
    assert divides(zero, zero)
    assert not divides(zero, one)
    assert divides(one, zero)


def test_product_formula_examples():
    s = builtin_switch("budapest")
    fly = builtin_diagram("fly")
    rep = check_product_formula(fly, fly, s)
    assert rep.passed
    mo = codim_det(build_presentation(concat(fly, fly), s, "Mo"), 0)
    assert mo == canonicalize(parse_poly("((2 + t^-2)*(1 + 2*t^-2))^2"))
    assert check_product_formula(fly, builtin_diagram("empty"), s).passed
    bar = transform(fly, "reflect")
    for name in ("weyl-q", "budapest"):
        assert check_product_formula(fly, bar, builtin_switch(name)).passed


def test_product_formula_kind_mismatch():
    with pytest.raises(KindMismatchError):
        check_product_formula(builtin_diagram("fly"), builtin_diagram("flat-fly"), builtin_switch("budapest"))


@pytest.mark.parametrize("pair", sorted(EQUIVALENT_PAIRS))
@pytest.mark.parametrize("switch", BUILTIN_SWITCHES)
def test_curated_equivalences(pair, switch):
    s = builtin_switch(switch)
    a, b = EQUIVALENT_PAIRS[pair]
    kind = s.kind
    if kind == "flat":
        a, b = (c.replace("O", "L").replace("U", "R").replace("+", "").replace("-", "") for c in (a, b))
    da, db = parse_code(a, kind), parse_code(b, kind)
    assert invariant_profile(da, s, 1) == invariant_profile(db, s, 1)


@pytest.mark.parametrize("switch", BUILTIN_SWITCHES)
@pytest.mark.parametrize("move", ["r1", "r2", "v1", "v2"])
def test_every_move_variant_preserves_profile(switch, move):
    s = builtin_switch(switch)
    d = builtin_diagram("flat-fly" if s.kind == "flat" else "fly")
    base = invariant_profile(d, s, 1)
    n = len(d.passages)
    rng = random.Random(3)
    for variant in range(4 if move in ("r1", "r2") else 2):
        p, q = rng.randint(0, n), rng.randint(0, n)
        assert invariant_profile(perturb(d, move, p, q, variant), s, 1) == base, (move, p, q, variant)


def test_gaussian_mode_profile():
    s = builtin_switch("budapest", unit_mode="gaussian-integer")
    prof = invariant_profile(builtin_diagram("fly"), s, 0)
    assert prof.mode == "gaussian-integer"
    assert prof[("M", 0)].form == parse_poly("2*t^2 + 1")


def test_determinant_of_fly_mo_directly():
    s = builtin_switch("budapest")
    p = build_presentation(builtin_diagram("fly"), s, "Mo")
    assert canonicalize(determinant(p.to_matrix())) == codim_det(p, 0)


@pytest.mark.parametrize("code", ["O1+ U1+", "U1- O1-", "O1+ U2- O2- U1+"])
def test_closure_consistency_with_kinks(code):
    s = builtin_switch("budapest")
    d = parse_code(code)
    assert closure_matches(d, s)
    assert check_divisibility(d, s, 1).passed
