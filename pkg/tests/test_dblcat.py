"""Double categories: fixtures, validators, hom structures, slices, terminals."""

import pytest

from doublecat.dblcat import (
    DoubleCat,
    double_cat_tables_equal,
    double_terminal_objects,
    embed,
    hom_category,
    hom_mu,
    hom_profunctor,
    hom_action,
    horizontal_opposite,
    identity_double_functor,
    is_double_iso,
    is_double_terminal,
    search_double_isomorphism,
    slice_double,
    underlying,
    validate_double_category,
    validate_double_functor,
    validate_vertical_transformation,
    identity_vertical_transformation,
)
from doublecat.fincat import (
    compose_profunctors,
    identity_profunctor,
    profunctor_tables_equal,
    validate_category,
    validate_prof_morphism,
    validate_profunctor,
)
from doublecat.fixtures import (
    cat1,
    dc0,
    dch1,
    dcv1,
    e1,
    e2,
    fixture_double_categories,
    q3,
    walking_iso,
)


@pytest.fixture(scope="module")
def fixtures():
    return fixture_double_categories()


def test_all_fixtures_validate(fixtures):
    for name, d in fixtures.items():
        report = validate_double_category(d)
        assert report.ok, f"{name}: {report}"


def test_e1_shape():
    d = e1()
    assert len(d.objects) == 6
    assert len(d.hmors) == 8
    assert len(d.vmors) == 12
    assert len(d.squares) == 15


def test_e2_shape():
    d = e2()
    assert len(d.objects) == 4
    assert len(d.hmors) == 7
    assert len(d.vmors) == 6
    assert len(d.squares) == 12


def test_corrupted_e1_reported():
    d = e1()
    vcomp_sq = dict(d.vcomp_sq)
    # redirect a unit composite involving alpha
    key = next(k for k in vcomp_sq if vcomp_sq[k] == "alpha")
    vcomp_sq[key] = d.vid_sq["g"]
    broken = DoubleCat(d.name, d.objects, d.hmors, d.vmors, d.squares, d.hid,
                       d.vid, d.hid_sq, d.vid_sq, d.hcomp_h, d.vcomp_v,
                       d.hcomp_sq, vcomp_sq)
    report = validate_double_category(broken)
    assert not report.ok


def test_underlying_categories(fixtures):
    for name, d in fixtures.items():
        for which in ("Ver0", "Hor0", "Ver1"):
            c = underlying(d, which)
            assert validate_category(c).ok, f"{name}/{which}"
    assert len(underlying(dc0(), "Ver0").objects) == 1
    v = underlying(dcv1(), "Ver0")
    assert set(v.objects) == {"0", "1"}
    assert len(v.morphisms) == 3
    h = underlying(e1(), "Hor0")
    assert len(h.objects) == 6 and len(h.morphisms) == 8


def test_horizontal_opposite_involution(fixtures):
    for name, d in fixtures.items():
        assert double_cat_tables_equal(horizontal_opposite(horizontal_opposite(d)), d), name
        assert validate_double_category(horizontal_opposite(d)).ok, name


def test_opposite_reverses_hmors():
    d = dch1()
    op = horizontal_opposite(d)
    assert op.hmors["f"] == ("1", "0")
    assert validate_double_category(op).ok


def test_embed_round_trips():
    c = walking_iso()
    v = embed(c, "vertical")
    assert validate_double_category(v).ok
    ver0 = underlying(v, "Ver0")
    assert ver0.objects == tuple(c.objects)
    assert ver0.morphisms == c.morphisms
    assert ver0.composition == c.composition
    h = embed(c, "horizontal")
    assert validate_double_category(h).ok
    hor0 = underlying(h, "Hor0")
    assert hor0.morphisms == c.morphisms
    assert hor0.composition == c.composition


def test_embed_defining_cases():
    from doublecat.fixtures import cat0

    v = embed(cat1(), "vertical")
    assert double_cat_tables_equal(v, dcv1())
    h0 = embed(cat0(), "horizontal")
    assert len(h0.objects) == 1 and len(h0.squares) == 1


def test_hom_categories():
    d2 = e2()
    empty = hom_category(d2, "x", "y1")
    assert len(empty.objects) == 0
    d1 = e1()
    gcat = hom_category(d1, "x", "y")
    assert tuple(gcat.objects) == ("g",)
    assert len(gcat.morphisms) == 1
    assert validate_category(gcat).ok
    point = dc0()
    star = hom_category(point, "*", "*")
    assert len(star.objects) == 1 and len(star.morphisms) == 1


def test_hom_profunctor_e1():
    d = e1()
    p = hom_profunctor(d, "w", "wv")
    assert p.at("g", "g2") == frozenset({"alpha"})
    assert validate_profunctor(p).ok
    q = hom_profunctor(d, "u", "v")
    assert q.total_elements() == 0


def test_hom_profunctor_normality():
    d = dc0()
    p = hom_profunctor(d, d.vid["*"], d.vid["*"])
    ident = identity_profunctor(hom_category(d, "*", "*"))
    assert profunctor_tables_equal(p, ident)
    d1 = e1()
    p1 = hom_profunctor(d1, d1.vid["x"], d1.vid["y"])
    i1 = identity_profunctor(hom_category(d1, "x", "y"))
    assert profunctor_tables_equal(p1, i1)


def test_hom_action_identity_cases():
    d = e1()
    pm = hom_action(d, d.hid_sq["w"], d.hid_sq["wv"])
    assert validate_prof_morphism(pm).ok
    assert pm.map_at("g", "g2", "alpha") == "alpha"


def test_hom_mu_counterexample_e1():
    d = e1()
    first = hom_profunctor(d, "u", "v")
    second = hom_profunctor(d, "u1", "v1")
    comp = compose_profunctors(first, second)
    assert len(comp.at("g", "g2")) == 0
    target = hom_profunctor(d, "w", "wv")
    assert len(target.at("g", "g2")) == 1
    mu = hom_mu(d, ("u", "v"), ("u1", "v1"), first=first, second=second,
                target=target)
    assert validate_prof_morphism(mu).ok
    # injective everywhere but not surjective at (g, g2)
    img = set(mu.mapping[("g", "g2")].values())
    assert img == set() and len(target.at("g", "g2")) == 1


def test_hom_mu_counterexample_e2():
    d = e2()
    first = hom_profunctor(d, "u", d.vid["y"])
    second = hom_profunctor(d, d.vid["x1"], "uh")
    comp = compose_profunctors(first, second)
    assert len(comp.at("g", "gp")) == 1
    other_first = hom_profunctor(d, d.vid["x"], "uh")
    other_second = hom_profunctor(d, "u", d.vid["y1"])
    other = compose_profunctors(other_first, other_second)
    assert len(other.at("g", "gp")) == 0
    mu = hom_mu(d, ("u", d.vid["y"]), (d.vid["x1"], "uh"), first=first,
                second=second)
    assert validate_prof_morphism(mu).ok
    [cls] = comp.at("g", "gp")
    assert mu.map_at("g", "gp", cls) == "alphaC"


def test_slice_dc0():
    total, proj = slice_double(dc0(), "*")
    assert validate_double_category(total).ok
    assert validate_double_functor(proj).ok
    assert is_double_iso(proj)


def test_slice_e1_objects():
    total, proj = slice_double(e1(), "y2")
    assert set(total.objects) == {("x2", "g2"), ("y2", ("h1", "y2"))}
    assert validate_double_category(total).ok
    assert validate_double_functor(proj).ok


def test_double_terminal_objects():
    assert [w.obj for w in double_terminal_objects(dc0())] == ["*"]
    assert double_terminal_objects(dcv1()) == []
    for d in (dc0(), dch1(), dcv1(), e1(), e2(), q3()):
        for xh in d.objects:
            total, _ = slice_double(d, xh)
            witnesses = double_terminal_objects(total)
            assert (xh, d.hid[xh]) in [w.obj for w in witnesses], (d.name, xh)


def test_terminal_iff_slice_projection_iso():
    for d in (dc0(), dch1(), dcv1(), e1(), e2(), q3()):
        for xh in d.objects:
            w = is_double_terminal(d, xh)
            _, proj = slice_double(d, xh)
            iso = validate_double_functor(proj).ok and is_double_iso(proj)
            assert (w is not None) == iso, (d.name, xh)


def test_validate_double_functor_identity(fixtures):
    for name, d in fixtures.items():
        assert validate_double_functor(identity_double_functor(d)).ok, name


def test_slice_projection_validates():
    total, proj = slice_double(e2(), "y")
    assert validate_double_functor(proj).ok


def test_vertical_transformation_validator():
    d = e1()
    ident = identity_vertical_transformation(identity_double_functor(d))
    assert validate_vertical_transformation(ident).ok
    broken = identity_vertical_transformation(identity_double_functor(d))
    at_hmor = dict(broken.at_hmor)
    at_hmor["g"] = "alpha"
    from doublecat.dblcat import VerticalTransformation
    bad = VerticalTransformation(broken.source, broken.target, broken.at_obj,
                                 at_hmor)
    report = validate_vertical_transformation(bad)
    assert not report.ok
    assert report.mentions("g")


def test_search_double_isomorphism():
    d = e2()
    renamed_objects = {"x": "p", "x1": "q", "y": "r", "y1": "s"}

    def rename(tok):
        if isinstance(tok, tuple):
            return tuple(rename(t) for t in tok)
        return renamed_objects.get(tok, tok)

    other = DoubleCat(
        "E2r", tuple(rename(x) for x in d.objects),
        {rename(k): (rename(s), rename(t)) for k, (s, t) in d.hmors.items()},
        {rename(k): (rename(s), rename(t)) for k, (s, t) in d.vmors.items()},
        {rename(k): tuple(rename(c) for c in bnd) for k, bnd in d.squares.items()},
        {rename(k): rename(v) for k, v in d.hid.items()},
        {rename(k): rename(v) for k, v in d.vid.items()},
        {rename(k): rename(v) for k, v in d.hid_sq.items()},
        {rename(k): rename(v) for k, v in d.vid_sq.items()},
        {(rename(a), rename(b)): rename(v) for (a, b), v in d.hcomp_h.items()},
        {(rename(a), rename(b)): rename(v) for (a, b), v in d.vcomp_v.items()},
        {(rename(a), rename(b)): rename(v) for (a, b), v in d.hcomp_sq.items()},
        {(rename(a), rename(b)): rename(v) for (a, b), v in d.vcomp_sq.items()},
    )
    assert validate_double_category(other).ok
    iso = search_double_isomorphism(d, other)
    assert iso is not None
    assert search_double_isomorphism(d, dcv1()) is None
