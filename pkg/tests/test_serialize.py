import json

import pytest

from coalg.coalgebra import Coalgebra, zoo, zoo_members
from coalg.codual import left_codual
from coalg.comodule import regular_bicomodule, regular_left, regular_right
from coalg.errors import ParseError, UsageError
from coalg.focc import focc_from_basis, focc_space
from coalg.linalg import qarray
from coalg.serialize import (NamedMap, emit_structure, parse_structure,
                             resolve_zoo_uri, structure_hash, zoo_uri_for)


def test_parse_point_coalgebra_file():
    text = '{"kind": "coalgebra", "name": "trivial", "dim": 1, ' \
           '"omega": [[0, 0, 0, "1"]], "counit": ["1"]}'
    assert parse_structure(text) == zoo("trivial")


def test_emit_grouplike2_sparsity():
    data = json.loads(emit_structure(zoo("grouplike", 2)))
    assert len(data["omega"]) == 2
    assert data["counit"] == ["1", "1"]


def test_round_trip_identity_for_every_zoo_member():
    for c in zoo_members():
        assert parse_structure(emit_structure(c)) == c, c.name


def test_round_trip_regular_bicomodules():
    for c in zoo_members():
        b = regular_bicomodule(c)
        assert parse_structure(emit_structure(b)) == b, c.name


def test_round_trip_one_sided_comodules():
    c = zoo("primitive2")
    for side in (regular_left(c), regular_right(c)):
        assert parse_structure(emit_structure(side)) == side


def test_round_trip_solver_outputs():
    c = zoo("primitive2")
    u = regular_bicomodule(c)
    f = focc_from_basis(u, focc_space(u), 0)
    assert parse_structure(emit_structure(f)) == f
    cod = left_codual(u)
    assert parse_structure(emit_structure(cod.as_bicomodule())) == cod.as_bicomodule()
    for i, x in enumerate(cod.basis_maps):
        m = NamedMap(f"cofield{i}", x)
        assert parse_structure(emit_structure(m)) == m


def test_emission_is_byte_deterministic():
    b = regular_bicomodule(zoo("matrix", 2))
    first = emit_structure(b)
    second = emit_structure(parse_structure(first))
    assert first == second
    assert structure_hash(b) == structure_hash(parse_structure(first))


def test_zoo_members_serialize_by_reference():
    text = emit_structure(regular_bicomodule(zoo("primitive2")))
    assert json.loads(text)["over"] == "zoo:primitive2"


def test_renamed_coalgebras_serialize_inline():
    c = zoo("primitive2")
    renamed = Coalgebra("mine", c.dim, c.omega.copy(), c.counit.copy())
    data = json.loads(emit_structure(regular_bicomodule(renamed)))
    assert isinstance(data["over"], dict)
    assert data["over"]["kind"] == "coalgebra"
    parsed = parse_structure(json.dumps(data))
    assert parsed == regular_bicomodule(renamed)


def test_zoo_uri_resolution():
    assert resolve_zoo_uri("zoo:matrix2") == zoo("matrix", 2)
    assert resolve_zoo_uri("zoo:grouplike3") == zoo("grouplike", 3)
    assert zoo_uri_for(zoo("matrix", 3)) == "zoo:matrix3"
    with pytest.raises(UsageError):
        resolve_zoo_uri("zoo:borogoves")


# -- parse errors --------------------------------------------------------------

def test_malformed_json():
    with pytest.raises(ParseError) as err:
        parse_structure("{not json")
    assert "malformed JSON" in str(err.value)


def test_index_out_of_range():
    text = '{"kind": "coalgebra", "name": "t", "dim": 1, ' \
           '"omega": [[0, 0, 5, "1"]], "counit": ["1"]}'
    with pytest.raises(ParseError) as err:
        parse_structure(text)
    assert "index out of range" in str(err.value)


def test_duplicate_entry():
    text = '{"kind": "coalgebra", "name": "t", "dim": 1, ' \
           '"omega": [[0, 0, 0, "1"], [0, 0, 0, "2"]], "counit": ["1"]}'
    with pytest.raises(ParseError) as err:
        parse_structure(text)
    assert "duplicate" in str(err.value)


@pytest.mark.parametrize("value", ["2/4", "3/1", "1/-2", "+1", "01", "0/5", "1.5"])
def test_non_canonical_rationals_are_rejected(value):
    text = ('{"kind": "coalgebra", "name": "t", "dim": 1, '
            f'"omega": [[0, 0, 0, "{value}"]], "counit": ["1"]}}')
    with pytest.raises(ParseError):
        parse_structure(text)


def test_numeric_values_are_rejected():
    text = '{"kind": "coalgebra", "name": "t", "dim": 1, ' \
           '"omega": [[0, 0, 0, 1]], "counit": ["1"]}'
    with pytest.raises(ParseError) as err:
        parse_structure(text)
    assert "string" in str(err.value)


def test_unknown_kind():
    with pytest.raises(ParseError):
        parse_structure('{"kind": "sheaf", "name": "t", "dim": 1}')


def test_bad_side():
    text = json.dumps({"kind": "comodule", "name": "u", "side": "central",
                       "dim": 1, "over": "zoo:trivial",
                       "coaction": [[0, 0, 0, "1"]]})
    with pytest.raises(ParseError):
        parse_structure(text)


def test_missing_over():
    text = json.dumps({"kind": "bicomodule", "name": "u", "dim": 1,
                       "left": [], "right": []})
    with pytest.raises(ParseError) as err:
        parse_structure(text)
    assert "over" in str(err.value)


def test_unresolvable_reference():
    text = json.dumps({"kind": "comodule", "name": "u", "side": "left",
                       "dim": 1, "over": "elsewhere.json", "coaction": []})
    with pytest.raises(ParseError):
        parse_structure(text)


def test_bad_dimension():
    with pytest.raises(ParseError):
        parse_structure('{"kind": "coalgebra", "name": "t", "dim": 0, '
                        '"omega": [], "counit": []}')


def test_counit_must_be_dense():
    text = '{"kind": "coalgebra", "name": "t", "dim": 2, ' \
           '"omega": [[0, 0, 0, "1"]], "counit": ["1"]}'
    with pytest.raises(ParseError):
        parse_structure(text)


def test_entry_arity_is_checked():
    text = '{"kind": "coalgebra", "name": "t", "dim": 1, ' \
           '"omega": [[0, 0, "1"]], "counit": ["1"]}'
    with pytest.raises(ParseError):
        parse_structure(text)


def test_map_round_trip_with_zero_rows():
    m = NamedMap("empty", qarray([[]]).reshape(0, 3))
    assert parse_structure(emit_structure(m)) == m
