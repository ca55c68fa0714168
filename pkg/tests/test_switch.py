import json

import pytest

from longknots.matrix import RingMatrix, mat_inverse
from longknots.ring import QQ, QQI, Quaternion, quat_to_matrix
from longknots.switch import (
    BUILTIN_SWITCHES,
    InvalidSwitchError,
    Switch,
    SwitchFileError,
    SwitchPreconditionError,
    algebra_relation_holds,
    algebra_relation_sides,
    builtin_switch,
    classify_symmetry,
    complete_switch,
    load_switch,
    switch_from_dict,
    switch_to_dict,
    symmetry_report,
    weyl_generators,
)


def Qm(*parts):
    return quat_to_matrix(Quaternion.from_strings(parts))


@pytest.mark.parametrize("name", BUILTIN_SWITCHES)
def test_builtin_switch_axioms(name):
    s = builtin_switch(name)
    lhs, rhs = s.yang_baxter_sides()
    assert lhs == rhs
    assert (s.matrix * mat_inverse(s.matrix)).is_identity()
    assert algebra_relation_holds(s)
    if s.kind == "flat":
        assert (s.matrix * s.matrix).is_identity()


def test_completion_reproduces_budapest():
    s = complete_switch(Qm("1", "1", "0", "0"), Qm("0", "0", "-t", "0"))
    assert s.C == Qm("0", "0", "t^-1", "0")
    assert s.D == Qm("1", "1", "0", "0")
    assert s.matrix == builtin_switch("budapest").matrix


def test_completion_scalar_alexander():
    s = complete_switch(RingMatrix.parse([["2"]]), RingMatrix.parse([["1"]]))
    assert s.matrix == RingMatrix.parse([["2", "1"], ["-1", "0"]])


def test_completion_requires_one_minus_a_invertible():
    with pytest.raises(SwitchPreconditionError):
        complete_switch(RingMatrix.identity(1), RingMatrix.identity(1))


def test_invalid_switch_names_axiom():
    i = RingMatrix.identity(1)
    with pytest.raises(InvalidSwitchError) as err:
        Switch(i.map(lambda e: e * 2), i, i, i.map(lambda e: e * 3))
    assert err.value.axiom


def test_relation_sides_budapest():
    lhs, rhs = algebra_relation_sides(builtin_switch("budapest"))
    assert lhs == rhs


def test_flat_weyl_relation_is_identity():
    lhs, rhs = algebra_relation_sides(builtin_switch("flat-weyl"))
    assert lhs.is_identity() and rhs.is_identity()


def test_weyl_generators_commutator():
    for specialise in (False, True):
        u, v = weyl_generators(specialise)
        assert (u * v - v * u).is_identity()


def test_flat_weyl_is_gf2_and_flat():
    s = builtin_switch("flat-weyl")
    assert s.kind == "flat"
    assert s.domain.name == "gf2"
    assert s.vars == ("x",)


def test_symmetry_classes():
    assert "involutory" in classify_symmetry(builtin_switch("flat-weyl"))
    assert classify_symmetry(builtin_switch("budapest")) == frozenset()
    report = symmetry_report(builtin_switch("alexander-spec"))
    assert "dagger-unitary" in report["variant"]
    assert "dagger-unitary" not in report["displayed"]


def test_unit_mode_override():
    s = builtin_switch("budapest", unit_mode="gaussian-integer")
    assert s.unit_mode == "gaussian-integer"
    assert s.matrix == builtin_switch("budapest").matrix
    with pytest.raises(KeyError):
        builtin_switch("nope")


# -- files --------------------------------------------------------------------


def write(tmp_path, doc, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return p


BUDAPEST_DOC = {
    "name": "budapest",
    "coefficients": "gaussian",
    "variables": ["t"],
    "entry-type": "quaternion",
    "A": ["1", "1", "0", "0"],
    "B": ["0", "0", "-t", "0"],
    "C": ["0", "0", "t^-1", "0"],
    "D": ["1", "1", "0", "0"],
}


def test_quaternion_file_round_trip(tmp_path):
    s = load_switch(write(tmp_path, BUDAPEST_DOC))
    assert s.matrix == builtin_switch("budapest").matrix


def test_file_with_a_and_b_completes(tmp_path):
    doc = {k: v for k, v in BUDAPEST_DOC.items() if k not in "CD"}
    assert load_switch(write(tmp_path, doc)).matrix == builtin_switch("budapest").matrix


@pytest.mark.parametrize("name", BUILTIN_SWITCHES)
def test_matrix_document_round_trip(name):
    s = builtin_switch(name)
    t = switch_from_dict(switch_to_dict(s))
    assert t.matrix == s.matrix and t.kind == s.kind


def test_file_with_only_a(tmp_path):
    doc = {k: v for k, v in BUDAPEST_DOC.items() if k not in "BCD"}
    with pytest.raises(SwitchFileError):
        load_switch(write(tmp_path, doc))


def test_file_singular_one_minus_a(tmp_path):
    doc = {
        "name": "bad",
        "coefficients": "rational",
        "variables": ["t"],
        "entry-type": "matrix",
        "A": [["1", "1"], ["0", "1"]],
        "B": [["1", "0"], ["0", "1"]],
    }
    with pytest.raises(InvalidSwitchError):
        load_switch(write(tmp_path, doc))


def test_file_json_error_has_position(tmp_path):
    with pytest.raises(SwitchFileError) as err:
        load_switch(write(tmp_path, '{"name": "x",\n  "A": [}'))
    assert err.value.line == 2
    assert err.value.column is not None


def test_file_bad_polynomial(tmp_path):
    doc = dict(BUDAPEST_DOC, A=["1", "1 +", "0", "0"])
    with pytest.raises(SwitchFileError, match="A"):
        load_switch(write(tmp_path, doc))


def test_no_check_loads_corrupt_switch(tmp_path):
    doc = {
        "name": "corrupt",
        "coefficients": "rational",
        "variables": ["t"],
        "entry-type": "matrix",
        "A": [["2"]],
        "B": [["t"]],
        "C": [["1"]],
        "D": [["3"]],
    }
    p = write(tmp_path, doc)
    with pytest.raises(InvalidSwitchError):
        load_switch(p)
    s = load_switch(p, check=False)
    lhs, rhs = s.yang_baxter_sides()
    assert lhs != rhs


def test_mixed_domains_promote():
    a = RingMatrix.parse([["2"]], domain=QQ)
    s = Switch(a, RingMatrix.parse([["1"]], domain=QQI), RingMatrix.parse([["-1"]]), RingMatrix.parse([["0"]]))
    assert s.domain is QQI
