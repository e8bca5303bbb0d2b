"""Document parsing and serialization: round trips and error classes."""

import json
from importlib import resources

import pytest

from doublecat import docio
from doublecat.dblcat import double_cat_tables_equal
from doublecat.dfib import DiscreteDoubleFibration, slice_fibration
from doublecat.fixtures import (
    e1,
    e2,
    fixture_categories,
    fixture_double_categories,
)
from doublecat.presheaf import (
    representable,
    transformation_tables_equal,
    yoneda_phi,
)


def fixture_text(name):
    return (resources.files("doublecat") / "fixtures_data" / name).read_text()


def test_fixture_files_match_programmatic_fixtures():
    for name, d in fixture_double_categories().items():
        doc = docio.parse(fixture_text(f"{name}.json"))
        assert doc.kind == "doublecat"
        assert double_cat_tables_equal(doc.payload, d), name
    for name, c in fixture_categories().items():
        doc = docio.parse(fixture_text(f"{name}.json"))
        assert doc.kind == "category"
        assert doc.payload.morphisms == c.morphisms


def test_dc0_shape_from_file():
    doc = docio.parse(fixture_text("DC0.json"))
    d = doc.payload
    assert (len(d.objects), len(d.hmors), len(d.vmors), len(d.squares)) == (1, 1, 1, 1)


def test_e1_file_matches_generators():
    doc = docio.parse(fixture_text("E1.json"))
    d = doc.payload
    assert "alpha" in d.squares
    assert d.vcomp_v[("u1", "u")] == "w"


def test_round_trip_stability():
    for name, d in fixture_double_categories().items():
        text = docio.serialize(d)
        again = docio.serialize(docio.parse(text).payload)
        assert text == again, name


def test_parse_serialize_canonicalizes_key_order():
    text = docio.serialize(e2())
    raw = json.loads(text)
    # scramble top-level key order; parse must not care
    scrambled = json.dumps({k: raw[k] for k in reversed(list(raw))})
    doc = docio.parse(scrambled)
    assert docio.serialize(doc.payload) == text


def test_presheaf_round_trip():
    x = representable(e2(), "y")
    doc = docio.parse(docio.serialize(x))
    assert doc.kind == "presheaf"
    y = doc.payload
    assert docio.serialize(y) == docio.serialize(x)
    # the reloaded presheaf supports the same computations
    phi = yoneda_phi(y, "y", y.base.hid["y"])
    ident_like = yoneda_phi(x, "y", x.base.hid["y"])
    assert transformation_tables_equal(phi, ident_like)


def test_transformation_round_trip():
    x = representable(e2(), "y")
    phi = yoneda_phi(x, "x", "g")
    text = docio.serialize(phi)
    doc = docio.parse(text)
    assert doc.kind == "transformation"
    assert docio.serialize(doc.payload) == text


def test_dfib_round_trip():
    fib = slice_fibration(e2(), "y")
    doc = docio.parse(docio.serialize(fib))
    assert doc.kind == "dfib"
    assert isinstance(doc.payload, DiscreteDoubleFibration)


def test_syntax_error_reports_position():
    with pytest.raises(docio.ParseError) as err:
        docio.parse("{not json")
    assert "line" in str(err.value)


def test_unresolved_id_error():
    text = docio.serialize(e1())
    raw = json.loads(text)
    # square referencing a missing vmor
    for row in raw["payload"]["squares"]:
        if row[0] == "alpha":
            row[3] = "missing-vmor"
    with pytest.raises(docio.UnresolvedIdError):
        docio.parse(json.dumps(raw))


def test_validator_failure_is_distinct():
    text = docio.serialize(e1())
    raw = json.loads(text)
    rows = raw["payload"]["vcomp_v"]
    for row in rows:
        if row[0] == "u1" and row[1] == "u":
            row[2] = "u"  # wrong composite
    with pytest.raises(docio.DocValidationError):
        docio.parse(json.dumps(raw))


def test_unknown_kind_rejected():
    with pytest.raises(docio.ParseError):
        docio.parse(json.dumps({"kind": "nope", "version": 1, "payload": {}}))


def test_random_documents_round_trip():
    import random

    from doublecat.presheaf import validate_presheaf
    from doublecat.randgen import RandomSpec, random_dfib, random_presheaf

    spec = RandomSpec(seed=0, max_objects=3, max_value_size=2)
    for seed in range(8):
        rng = random.Random(seed)
        x = random_presheaf(rng, spec)
        text = docio.serialize(x)
        doc = docio.parse(text)
        assert validate_presheaf(doc.payload).ok
        assert docio.serialize(doc.payload) == text
    for seed in range(4):
        rng = random.Random(seed + 100)
        fibration = random_dfib(rng, spec)
        text = docio.serialize(fibration, kind="dfib")
        doc = docio.parse(text)
        assert isinstance(doc.payload, DiscreteDoubleFibration)
        assert docio.serialize(doc.payload, kind="dfib") == text
