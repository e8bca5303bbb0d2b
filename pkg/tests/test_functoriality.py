"""2-functoriality of the Grothendieck construction and whiskered Yoneda laws."""

from doublecat.dblcat import (
    compose_double_functors,
    compose_vertical_transformations,
    double_functor_tables_equal,
    validate_vertical_transformation,
)
from doublecat.fincat import fib, make_profunctor, tabulate
from doublecat.fixtures import cat1, dc0, e1, q3
from doublecat.dfib import fiber_vertical, identity_fibration
from doublecat.groth import groth, groth_2morphism, groth_morphism
from doublecat.presheaf import (
    compose_modifications,
    compose_transformations,
    constant_presheaf,
    enumerate_modifications,
    enumerate_transformations,
    postcompose_modification,
    precompose_modification,
    representable,
    representable_morphism,
    validate_globular_modification,
    yoneda_psi_modification,
)


def test_groth_morphism_preserves_composition():
    d = q3()
    r0 = representable(d, "0")
    r1 = representable(d, "1")
    r2 = representable(d, "2")
    f1 = representable_morphism(d, ("h", "0", "1"), source=r0, target=r1)
    f2 = representable_morphism(d, ("h", "1", "2"), source=r1, target=r2)
    g0, g1, g2 = groth(r0), groth(r1), groth(r2)
    lhs = groth_morphism(compose_transformations(f2, f1), g0, g2)
    rhs = compose_double_functors(groth_morphism(f2, g1, g2),
                                  groth_morphism(f1, g0, g1))
    assert double_functor_tables_equal(lhs, rhs)


def test_groth_morphism_of_representable_is_slice_postcomposition():
    d = q3()
    fh = ("h", "0", "1")
    r0, r1 = representable(d, "0"), representable(d, "1")
    f = representable_morphism(d, fh, source=r0, target=r1)
    g0, g1 = groth(r0), groth(r1)
    fun = groth_morphism(f, g0, g1)
    # post-composition on slice-shaped cells: (x, g) -> (x, fh∘g)
    for (x, g) in g0.total.objects:
        assert fun.ob((x, g)) == (x, d.hcomp_h[(fh, g)])


def test_groth_2morphism_preserves_vertical_composition():
    d = dc0()
    x = constant_presheaf(d, cat1())
    transfs = enumerate_transformations(x, x)
    assert len(transfs) == 3  # the three endofunctors of the walking arrow
    gx = groth(x)
    composable = []
    for f in transfs:
        for g in transfs:
            mods = enumerate_modifications(f, g)
            for nu in mods:
                composable.append(nu)
    found = 0
    for nu1 in composable:
        for nu2 in composable:
            if nu2.source is not nu1.target:
                from doublecat.presheaf import transformation_tables_equal
                if not transformation_tables_equal(nu2.source, nu1.target):
                    continue
            composite = compose_modifications(nu2, nu1)
            assert validate_globular_modification(composite).ok
            lhs = groth_2morphism(composite, gx, gx)
            rhs = compose_vertical_transformations(
                groth_2morphism(nu2, gx, gx), groth_2morphism(nu1, gx, gx))
            assert lhs.at_obj == rhs.at_obj
            assert lhs.at_hmor == rhs.at_hmor
            assert validate_vertical_transformation(lhs).ok
            found += 1
    assert found > 3


def test_yoneda_whiskered_modifications_in_presheaf_direction():
    # post-whiskered modifications stay valid
    d = dc0()
    x = constant_presheaf(d, cat1())
    transfs = enumerate_transformations(x, x)
    for f in transfs:
        for g in transfs:
            for nu in enumerate_modifications(f, g):
                for h in transfs:
                    whiskered = postcompose_modification(h, nu)
                    assert validate_globular_modification(whiskered).ok
    # whiskering by a representable morphism: psi(nu ∘ repr) = X(f)(psi nu)
    d1 = e1()
    x1 = representable(d1, "y2")
    src = representable(d1, "x2")
    repf = representable_morphism(d1, "g2", source=src, target=x1)
    for phi in enumerate_transformations(x1, x1):
        for phi2 in enumerate_transformations(x1, x1):
            for nu in enumerate_modifications(phi, phi2):
                whiskered = precompose_modification(nu, repf)
                assert validate_globular_modification(whiskered).ok
                lhs = yoneda_psi_modification(x1, "x2", whiskered)
                rhs = x1.on_hmor["g2"].mor(
                    yoneda_psi_modification(x1, "y2", nu))
                assert lhs == rhs


def test_fib_of_fiber_functor_on_e1_identity_fibration():
    d = e1()
    fibration = identity_fibration(d)
    cat, witness = fiber_vertical(fibration, "u")
    u = fib(witness)
    # singleton exactly at the boundary pair hit by u, empty elsewhere
    assert u.at("x", "x1") == frozenset({"u"})
    total = sum(len(v) for v in u.elements.values())
    assert total == 1


def test_fib_of_empty_fibration_is_empty():
    from doublecat.fincat import make_profunctor, tabulate
    from doublecat.fixtures import cat1
    c = cat1()
    empty = make_profunctor("empty", c, c, {}, lambda f, fp, e: e)
    w = tabulate(empty)
    assert len(w.total.objects) == 0
    back = fib(w)
    assert all(len(v) == 0 for v in back.elements.values())
