"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

All checks are exact (symbolic equality); the only tolerances are the stated
runtime budgets.
"""

import random
import time

from mutation_helpers import run_mutation_suite

from doublecat.dblcat import (
    DoubleFunctor,
    compose_double_functors,
    double_functor_tables_equal,
    is_double_iso,
    slice_double,
    validate_double_category,
    validate_double_functor,
)
from doublecat.dfib import check_dfib, ddel, identity_fibration, slice_fibration
from doublecat.fincat import (
    compose_profunctors,
    fib,
    fib_composition_comparison,
    prof_morphism_bijective,
    profunctor_tables_equal,
    tabulate,
    validate_category,
    validate_prof_morphism,
    validate_profunctor,
)
from doublecat.dblcat import hom_profunctor
from doublecat.fixtures import (
    cat1,
    dc0,
    dch1,
    dcv1,
    e1,
    e2,
    parallel_pair,
    q3,
    walking_iso,
)
from doublecat.groth import (
    counit_epsilon,
    groth,
    representation_check,
    unit_eta,
)
from doublecat.presheaf import (
    compose_transformations,
    constant_presheaf,
    enumerate_modifications,
    enumerate_transformations,
    identity_modification,
    identity_transformation,
    invert_transformation,
    modification_tables_equal,
    representable,
    transformation_invertible,
    transformation_tables_equal,
    validate_globular_modification,
    validate_horizontal_transformation,
    validate_presheaf,
    yoneda_phi,
    yoneda_phi_morphism,
    yoneda_psi,
    yoneda_psi_modification,
)
from doublecat.randgen import (
    RandomSpec,
    random_composable_profunctors,
    random_double_category,
    random_presheaf,
)
from doublecat.util import idkey


def _report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" -- {detail}" if detail else ""
    print(f"[criterion {num}] {status}: {name}{suffix}")
    assert ok, f"criterion {num} failed: {name} {detail}"


def fixture_bases():
    return {"DC0": dc0(), "DCH1": dch1(), "DCV1": dcv1(), "E1": e1(),
            "E2": e2()}


def test_criterion_1_counterexample_e1():
    start = time.perf_counter()
    d = e1()
    first = hom_profunctor(d, "u", "v")
    second = hom_profunctor(d, "u1", "v1")
    composite = compose_profunctors(first, second)
    target = hom_profunctor(d, "w", "wv")
    ok = (len(composite.at("g", "g2")) == 0
          and target.at("g", "g2") == frozenset({"alpha"}))
    elapsed = time.perf_counter() - start
    _report(1, "composite hom value 0 vs composite-edge value 1 on E1",
            ok and elapsed < 1.0, f"{elapsed:.3f}s")


def test_criterion_2_counterexample_e2():
    start = time.perf_counter()
    d = e2()
    through_mid = compose_profunctors(hom_profunctor(d, "u", d.vid["y"]),
                                      hom_profunctor(d, d.vid["x1"], "uh"))
    one = through_mid.at("g", "gp")
    other = compose_profunctors(hom_profunctor(d, d.vid["x"], "uh"),
                                hom_profunctor(d, "u", d.vid["y1"]))
    ok = (one == frozenset({("h", "alpha2", "alpha")})
          and len(other.at("g", "gp")) == 0)
    elapsed = time.perf_counter() - start
    _report(2, "one coend class {(alpha2, alpha)} vs the empty coend on E2",
            ok and elapsed < 1.0, f"{elapsed:.3f}s")


def test_criterion_3_yoneda_on_fixtures():
    start = time.perf_counter()
    checked = 0
    for name, d in fixture_bases().items():
        presheaves = [representable(d, xh) for xh in sorted(d.objects, key=idkey)]
        presheaves.append(ddel(identity_fibration(d)))
        for x in presheaves:
            for xh in sorted(d.objects, key=idkey):
                rep = representable(d, xh)
                transfs = enumerate_transformations(rep, x)
                value = x.on_obj[xh]
                assert len(transfs) == len(value.objects), (name, x.name, xh)
                for phi in transfs:
                    xm = yoneda_psi(x, xh, phi)
                    back = yoneda_phi(x, xh, xm, rep=rep)
                    assert transformation_tables_equal(phi, back)
                for xm in value.objects:
                    phi = yoneda_phi(x, xh, xm, rep=rep)
                    assert yoneda_psi(x, xh, phi) == xm
                for um in value.morphisms:
                    nu = yoneda_phi_morphism(x, xh, um, rep=rep)
                    assert yoneda_psi_modification(x, xh, nu) == um
                for phi in transfs:
                    for phi2 in transfs:
                        mods = enumerate_modifications(phi, phi2)
                        homset = value.hom(yoneda_psi(x, xh, phi),
                                           yoneda_psi(x, xh, phi2))
                        assert len(mods) == len(homset)
                        for nu in mods:
                            um = yoneda_psi_modification(x, xh, nu)
                            back = yoneda_phi_morphism(x, xh, um, rep=rep,
                                                       phi_src=nu.source,
                                                       phi_tgt=nu.target)
                            assert modification_tables_equal(nu, back)
                checked += 1
    elapsed = time.perf_counter() - start
    _report(3, "Yoneda counting and round-trips on every fixture pair",
            elapsed < 60.0, f"{checked} pairs in {elapsed:.1f}s")


def _check_equivalence(x):
    from doublecat.dfib import DiscreteDoubleFibration
    g = groth(x)
    assert validate_double_category(g.total).ok
    assert isinstance(check_dfib(g.projection.functor), DiscreteDoubleFibration)
    fibers = ddel(g.projection)
    eps = counit_epsilon(x, g, fibers)
    assert validate_horizontal_transformation(eps).ok
    assert transformation_invertible(eps)
    inv = invert_transformation(eps)
    assert transformation_tables_equal(compose_transformations(eps, inv),
                                       identity_transformation(x))
    assert transformation_tables_equal(compose_transformations(inv, eps),
                                       identity_transformation(fibers))
    g2 = groth(fibers)
    eta = unit_eta(g.projection, fibers, g2)
    assert validate_double_functor(eta).ok
    assert is_double_iso(eta)
    assert double_functor_tables_equal(
        compose_double_functors(g2.projection.functor, eta),
        g.projection.functor)


def test_criterion_4_and_6_equivalence_on_fixtures_and_random():
    start = time.perf_counter()
    count = 0
    for name, d in fixture_bases().items():
        for x in (representable(d, sorted(d.objects, key=idkey)[0]),
                  ddel(identity_fibration(d)),
                  constant_presheaf(d, parallel_pair())):
            _check_equivalence(x)
            count += 1
    spec = RandomSpec(seed=0, kind="presheaf", max_objects=4, max_value_size=3)
    seed = 0
    while count < 200 + 15:
        rng = random.Random(seed)
        seed += 1
        x = random_presheaf(rng, spec)
        _check_equivalence(x)
        count += 1
    elapsed = time.perf_counter() - start
    _report(4, "unit and counit isomorphisms on fixtures and 200+ random "
               "instances", elapsed < 300.0, f"{count} instances in {elapsed:.1f}s")
    _report(6, "every generated projection passed the discrete double "
               "fibration check", True, f"{count} projections")


def test_criterion_5_groth_of_representable_is_slice():
    bases = list(fixture_bases().values())
    rng = random.Random(42)
    spec = RandomSpec(seed=42, max_objects=4, max_value_size=3)
    for i in range(20):
        bases.append(random_double_category(rng, spec))
    for d in bases:
        for xh in sorted(d.objects, key=idkey):
            g = groth(representable(d, xh))
            total, proj = slice_double(d, xh)
            renaming = DoubleFunctor(
                g.total, total,
                {ob: ob for ob in g.total.objects},
                {f: f for f in g.total.hmors},
                {u: u[1] for u in g.total.vmors},
                {s: s for s in g.total.squares})
            assert validate_double_functor(renaming).ok, (d.name, xh)
            assert is_double_iso(renaming), (d.name, xh)
            assert double_functor_tables_equal(
                compose_double_functors(proj, renaming), g.projection.functor)
    _report(5, "groth of a representable equals the slice under the "
               "canonical renaming", True,
            f"{len(bases)} bases")


def test_criterion_7_representation_theorem():
    start = time.perf_counter()
    pairs = 0
    instances = 0
    for name, d in fixture_bases().items():
        presheaves = [representable(d, xh) for xh in sorted(d.objects, key=idkey)]
        presheaves.append(ddel(identity_fibration(d)))
        presheaves.append(constant_presheaf(d, cat1()))
        for x in presheaves:
            result = representation_check(x)
            assert result.verdict, (name, x.name)
            pairs += len(result.rows)
            instances += 1
    spec = RandomSpec(seed=0, kind="presheaf", max_objects=4, max_value_size=3)
    seed = 1000
    while instances < 100 + 17:
        rng = random.Random(seed)
        seed += 1
        x = random_presheaf(rng, spec)
        result = representation_check(x)
        assert result.verdict, x.name
        pairs += len(result.rows)
        instances += 1
    elapsed = time.perf_counter() - start
    _report(7, "representability and double terminality agree on every pair",
            elapsed < 300.0,
            f"{instances} presheaves, {pairs} pairs in {elapsed:.1f}s")


def test_criterion_8_fib_equivalence():
    start = time.perf_counter()
    spec = RandomSpec(seed=0, kind="profunctor", max_objects=4,
                      max_value_size=3)
    count = 0
    seed = 0
    while count < 100:
        rng = random.Random(seed)
        seed += 1
        u, v = random_composable_profunctors(rng, spec)
        assert validate_profunctor(u).ok and validate_profunctor(v).ok
        wu, wv = tabulate(u), tabulate(v)
        assert profunctor_tables_equal(fib(wu), u)
        assert profunctor_tables_equal(fib(wv), v)
        comparison = fib_composition_comparison(wu, wv)
        assert validate_prof_morphism(comparison).ok
        assert prof_morphism_bijective(comparison)
        count += 1
    elapsed = time.perf_counter() - start
    _report(8, "fib round-trips and matches profunctor composition",
            True, f"{count} instances in {elapsed:.1f}s")


def test_criterion_9_validators_and_mutations():
    for c in (cat1(), walking_iso(), parallel_pair()):
        assert validate_category(c).ok
    for d in list(fixture_bases().values()) + [q3()]:
        assert validate_double_category(d).ok
    fixtures_x = [representable(e2(), "y"),
                  constant_presheaf(dcv1(), parallel_pair()),
                  ddel(identity_fibration(e1()))]
    for x in fixtures_x:
        assert validate_presheaf(x).ok
    structures = [
        ("category", cat1()),
        ("category", walking_iso()),
        ("category", parallel_pair()),
        ("doublecat", dcv1()),
        ("doublecat", dch1()),
        ("doublecat", e1()),
        ("doublecat", e2()),
        ("doublecat", q3()),
        ("presheaf", representable(e2(), "y")),
        ("presheaf", constant_presheaf(dcv1(), parallel_pair())),
        ("dfib", slice_fibration(e2(), "y")),
    ]
    x = representable(e2(), "y")
    g = groth(x)
    eps = counit_epsilon(x, g, ddel(g.projection))
    assert validate_horizontal_transformation(eps).ok
    ident_mod = identity_modification(eps)
    assert validate_globular_modification(ident_mod).ok
    structures.append(("transformation", eps))
    structures.append(("modification", ident_mod))
    detected, total, survivors = run_mutation_suite(structures, cap=2)
    rate = detected / total
    _report(9, "validators pass on fixtures and detect single-entry mutations",
            rate >= 0.95, f"{detected}/{total} detected ({rate:.1%})")
