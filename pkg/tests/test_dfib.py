"""Discrete double fibrations: lifts, fibers, actions, fiber presheaves."""

from doublecat.dblcat import (
    DoubleFunctor,
    compose_double_functors,
    double_functor_tables_equal,
    identity_double_functor,
    is_double_iso,
    slice_double,
    validate_double_functor,
)
from doublecat.dfib import (
    DiscreteDoubleFibration,
    check_dfib,
    ddel,
    ddel_2morphism,
    ddel_morphism,
    fiber_object,
    fiber_vertical,
    hmor_action,
    identity_fibration,
    phi_fibrational,
    slice_comparison,
    slice_fibration,
    square_action,
)
from doublecat.fincat import (
    arrow_category,
    validate_category,
    validate_functor,
)
from doublecat.fixtures import dc0, dch1, dcv1, e1, e2, q3
from doublecat.presheaf import (
    transformation_tables_equal,
    identity_transformation,
    validate_globular_modification,
    validate_horizontal_transformation,
    validate_presheaf,
)
from doublecat.util import ValidationReport
from doublecat.dblcat import identity_vertical_transformation


def test_identity_functor_is_dfib():
    for d in (dc0(), dch1(), dcv1(), e1(), e2(), q3()):
        w = check_dfib(identity_double_functor(d))
        assert isinstance(w, DiscreteDoubleFibration), d.name


def test_collapse_functor_is_not_dfib():
    d = dch1()
    point = dc0()
    fun = DoubleFunctor(d, point,
                        {x: "*" for x in d.objects},
                        {f: point.hid["*"] for f in d.hmors},
                        {u: point.vid["*"] for u in d.vmors},
                        {s: point.hid_sq[point.vid["*"]] for s in d.squares})
    assert validate_double_functor(fun).ok
    result = check_dfib(fun)
    assert isinstance(result, ValidationReport)
    assert "hmor-lift-unique" in result.laws()


def test_slice_projection_is_dfib():
    for d in (dc0(), dcv1(), e1(), e2(), q3()):
        for xh in d.objects:
            w = slice_fibration(d, xh)
            assert isinstance(w, DiscreteDoubleFibration)


def test_fiber_object_of_identity_fibration():
    d = e1()
    fib = identity_fibration(d)
    for x in d.objects:
        cat = fiber_object(fib, x)
        assert tuple(cat.objects) == (x,)
        assert validate_category(cat).ok


def test_fiber_vertical_of_identity_fibration_dcv1():
    d = dcv1()
    fib = identity_fibration(d)
    cat, w = fiber_vertical(fib, "f")  # the walking vertical morphism
    assert tuple(cat.objects) == ("f",)
    assert validate_category(cat).ok
    assert w.functor.source is cat


def test_fiber_data_bundle():
    from doublecat.dfib import fibers

    d = e2()
    fib = slice_fibration(d, "y")
    data = fibers(fib)
    assert set(data.at_object) == set(d.objects)
    assert set(data.at_vertical) == set(d.vmors)
    for u, (cat, witness) in data.at_vertical.items():
        assert validate_category(cat).ok
        assert witness.functor.source is cat


def test_fiber_vertical_at_identity_is_arrow_category():
    d = e2()
    fib = slice_fibration(d, "y")
    for x in d.objects:
        fx = fiber_object(fib, x)
        cat, w = fiber_vertical(fib, d.vid[x], fx=fx, fxp=fx)
        arrows = arrow_category(fx)
        assert tuple(cat.objects) == tuple(arrows.objects)
        assert cat.morphisms == arrows.morphisms
        assert cat.composition == arrows.composition


def test_hmor_action_identity_and_composition():
    d = q3()
    fib = identity_fibration(d)
    for f, (x, y) in d.hmors.items():
        fun = hmor_action(fib, f)
        assert validate_functor(fun).ok
        if f == d.hid[x]:
            assert fun.on_objects == {e: e for e in fun.source.objects}
    for (g, f), gf in d.hcomp_h.items():
        x, z = d.hmors[gf]
        src = fiber_object(fib, z)
        mid = fiber_object(fib, d.htgt(f))
        tgt = fiber_object(fib, x)
        both = hmor_action(fib, gf, source=src, target=tgt)
        gstar = hmor_action(fib, g, source=src, target=mid)
        fstar = hmor_action(fib, f, source=mid, target=tgt)
        assert both.on_objects == {e: fstar.ob(gstar.ob(e))
                                   for e in src.objects}


def test_square_action_respects_identity_squares():
    d = e2()
    fib = slice_fibration(d, "y")
    for f, (x, y) in d.hmors.items():
        fun = square_action(fib, d.vid_sq[f])
        fstar = hmor_action(fib, f)
        assert {v: fun.ob(v) for v in fun.source.objects} == {
            v: fstar.mor(v) for v in fun.source.objects}


def test_square_action_on_slice_of_e2():
    d = e2()
    fib = slice_fibration(d, "y")
    gstar = hmor_action(fib, "g")
    assert gstar.ob(("y", d.hid["y"])) == ("x", "g")


def test_ddel_validates():
    for d in (dc0(), dch1(), dcv1(), e1(), e2(), q3()):
        x = ddel(identity_fibration(d))
        report = validate_presheaf(x)
        assert report.ok, f"{d.name}: {report}"
        for xh in d.objects:
            y = ddel(slice_fibration(d, xh))
            report = validate_presheaf(y)
            assert report.ok, f"{d.name}/{xh}: {report}"


def _slice_fibers_vs_representable(d, xh):
    from doublecat.fincat import FinFunctor, make_prof_morphism
    from doublecat.presheaf import HorizontalTransf, representable

    fibration = slice_fibration(d, xh)
    fibers = ddel(fibration)
    rep = representable(d, xh)
    at_obj = {}
    for x in d.objects:
        src = fibers.on_obj[x]
        at_obj[x] = FinFunctor(src, rep.on_obj[x],
                               {(o, g): g for (o, g) in src.objects},
                               {m: m for m in src.morphisms})
    at_vmor = {}
    for u, (s, t) in d.vmors.items():

        def fn(e1, e2, v):
            return v

        at_vmor[u] = make_prof_morphism("cmp", fibers.on_vmor[u],
                                        rep.on_vmor[u], at_obj[s], at_obj[t],
                                        fn)
    return HorizontalTransf("slice-vs-representable", fibers, rep, at_obj,
                            at_vmor)


def test_ddel_of_slice_matches_representable():
    from doublecat.presheaf import transformation_invertible

    for d in (dc0(), dcv1(), e1(), e2(), q3()):
        for xh in d.objects:
            cmp = _slice_fibers_vs_representable(d, xh)
            assert validate_horizontal_transformation(cmp).ok, (d.name, xh)
            assert transformation_invertible(cmp), (d.name, xh)


def test_fibers_of_projection_are_value_pairs():
    from doublecat.groth import groth
    from doublecat.presheaf import representable

    d = e2()
    x = representable(d, "y")
    g = groth(x)
    fibers = ddel(g.projection)
    for ob in d.objects:
        expected = {(ob, xm) for xm in x.on_obj[ob].objects}
        assert set(fibers.on_obj[ob].objects) == expected


def test_ddel_morphism_and_2morphism_identity():
    d = e1()
    fib = identity_fibration(d)
    x = ddel(fib)
    f = ddel_morphism(identity_double_functor(d), fib, fib, xp=x, xq=x)
    assert validate_horizontal_transformation(f).ok
    assert transformation_tables_equal(f, identity_transformation(x))
    a = ddel_2morphism(identity_vertical_transformation(identity_double_functor(d)),
                       fib, fib, fsrc=f, ftgt=f)
    assert validate_globular_modification(a).ok


def test_phi_fibrational_identity_point():
    d = dc0()
    fib = identity_fibration(d)
    fun = phi_fibrational(fib, "*")
    assert validate_double_functor(fun).ok
    assert is_double_iso(fun)


def test_phi_fibrational_factorization():
    d = e2()
    fib = slice_fibration(d, "y")
    for xhm in fib.total.objects:
        fun = phi_fibrational(fib, xhm)
        assert validate_double_functor(fun).ok
        # the composite with the slice-of-slice comparison is the projection
        cmp = slice_comparison(fib, xhm)
        slice_of_total, proj_to_total = slice_double(fib.total, xhm)
        composite = compose_double_functors(fun, cmp.functor)
        assert double_functor_tables_equal(composite, proj_to_total)


def test_phi_fibrational_detects_terminal():
    from doublecat.dblcat import is_double_terminal
    d = e2()
    fib = slice_fibration(d, "y")
    for xhm in fib.total.objects:
        fun = phi_fibrational(fib, xhm)
        iso = is_double_iso(fun) and validate_double_functor(fun).ok
        terminal = is_double_terminal(fib.total, xhm) is not None
        assert iso == terminal


def test_slice_comparison_iso():
    for d in (dc0(), dcv1(), e1(), e2()):
        fib = identity_fibration(d)
        for xhm in d.objects:
            result = slice_comparison(fib, xhm)
            assert result.is_iso
            assert result.full_iso
            assert result.ver0_iso == result.full_iso


def test_slice_comparison_detects_broken_fibration():
    d = dch1()
    point = dc0()
    fun = DoubleFunctor(d, point,
                        {x: "*" for x in d.objects},
                        {f: point.hid["*"] for f in d.hmors},
                        {u: point.vid["*"] for u in d.vmors},
                        {s: point.hid_sq[point.vid["*"]] for s in d.squares})
    bogus = DiscreteDoubleFibration(fun, {}, {})
    result = slice_comparison(bogus, "1")
    assert not result.ver0_iso
    assert not result.is_iso


def test_lift_closure_under_composition():
    d = q3()
    fib = identity_fibration(d)
    for (g, f), gf in d.hcomp_h.items():
        for e in d.objects:
            if d.htgt(gf) != e:
                continue
            lhs = fib.pull_obj(gf, e)
            rhs = fib.pull_obj(f, fib.pull_obj(g, e))
            assert lhs == rhs
    for (b, a), s in d.hcomp_sq.items():
        for w in d.vmors:
            if d.right(s) != w:
                continue
            assert fib.pull_vmor(s, w) == fib.pull_vmor(a, fib.pull_vmor(b, w))
