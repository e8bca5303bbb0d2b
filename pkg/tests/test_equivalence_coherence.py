"""Coherence of the fixed-base equivalence: triangle identities and
naturality of the unit/counit at both cell levels."""

from doublecat.dblcat import (
    compose_double_functors,
    double_functor_tables_equal,
    identity_double_functor,
)
from doublecat.dfib import (
    ddel,
    ddel_2morphism,
    ddel_morphism,
    identity_fibration,
    phi_fibrational,
    slice_fibration,
)
from doublecat.fixtures import cat1, dc0, dcv1, e1, e2, parallel_pair, q3
from doublecat.groth import (
    counit_epsilon,
    groth,
    groth_2morphism,
    groth_morphism,
    unit_eta,
)
from doublecat.presheaf import (
    compose_transformations,
    constant_presheaf,
    enumerate_modifications,
    enumerate_transformations,
    identity_transformation,
    modification_tables_equal,
    postcompose_modification,
    precompose_modification,
    representable,
    transformation_tables_equal,
    validate_globular_modification,
)
from doublecat.util import idkey


def bases():
    return [dc0(), dcv1(), e1(), e2(), q3()]


def presheaves_on(d):
    yield representable(d, sorted(d.objects, key=idkey)[0])
    yield ddel(identity_fibration(d))
    yield constant_presheaf(d, parallel_pair())


def test_triangle_identity_on_totals():
    # groth(counit) after unit is the identity on the total of the presheaf
    for d in bases():
        for x in presheaves_on(d):
            g = groth(x)
            fibers = ddel(g.projection)
            eps = counit_epsilon(x, g, fibers)
            g_fibers = groth(fibers)
            eta = unit_eta(g.projection, fibers, g_fibers)
            lhs = compose_double_functors(
                groth_morphism(eps, g_fibers, g), eta)
            assert double_functor_tables_equal(
                lhs, identity_double_functor(g.total)), (d.name, x.name)


def test_triangle_identity_on_fibers():
    # counit after the fibers of the unit is the identity on the fiber presheaf
    for d in bases():
        fibrations = [identity_fibration(d)]
        fibrations += [slice_fibration(d, xh)
                       for xh in sorted(d.objects, key=idkey)[:2]]
        for fibration in fibrations:
            fibers = ddel(fibration)
            g = groth(fibers)
            eta = unit_eta(fibration, fibers, g)
            fibers_of_total = ddel(g.projection)
            lifted = ddel_morphism(eta, fibration, g.projection,
                                   xp=fibers, xq=fibers_of_total)
            eps = counit_epsilon(fibers, g, fibers_of_total)
            composite = compose_transformations(eps, lifted)
            assert transformation_tables_equal(
                composite, identity_transformation(fibers)), d.name


def test_unit_naturality_in_fibration_morphisms():
    # eta_Q ∘ F = groth(ddel(F)) ∘ eta_P for a morphism of fibrations over C
    d = e2()
    q = identity_fibration(d)
    for xm in sorted(d.objects, key=idkey):
        p = slice_fibration(d, xm)
        f = phi_fibrational(q, xm)  # slice total -> total of q, over d
        assert double_functor_tables_equal(
            compose_double_functors(q.functor, f), p.functor)
        fibers_p, fibers_q = ddel(p), ddel(q)
        gp, gq = groth(fibers_p), groth(fibers_q)
        eta_p = unit_eta(p, fibers_p, gp)
        eta_q = unit_eta(q, fibers_q, gq)
        lifted = groth_morphism(
            ddel_morphism(f, p, q, xp=fibers_p, xq=fibers_q), gp, gq)
        lhs = compose_double_functors(eta_q, f)
        rhs = compose_double_functors(lifted, eta_p)
        assert double_functor_tables_equal(lhs, rhs), xm


def test_counit_naturality_at_modifications():
    # eps_Y ∘ fibers(total(nu)) = nu ∘ eps_X, pointwise at every component
    d = dc0()
    x = constant_presheaf(d, cat1())
    transfs = enumerate_transformations(x, x)
    gx = groth(x)
    fibers_x = ddel(gx.projection)
    eps = counit_epsilon(x, gx, fibers_x)
    checked = 0
    for f in transfs:
        for g in transfs:
            for nu in enumerate_modifications(f, g):
                down = groth_2morphism(nu, gx, gx)
                lifted_src = ddel_morphism(down.source, gx.projection,
                                           gx.projection, xp=fibers_x,
                                           xq=fibers_x)
                lifted_tgt = ddel_morphism(down.target, gx.projection,
                                           gx.projection, xp=fibers_x,
                                           xq=fibers_x)
                lifted = ddel_2morphism(down, gx.projection, gx.projection,
                                        fsrc=lifted_src, ftgt=lifted_tgt)
                assert validate_globular_modification(lifted).ok
                lhs = postcompose_modification(eps, lifted)
                rhs = precompose_modification(nu, eps)
                assert modification_tables_equal(lhs, rhs)
                checked += 1
    assert checked == 6  # the order-preserving cells of the walking arrow
