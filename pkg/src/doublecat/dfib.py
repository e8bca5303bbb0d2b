"""Discrete double fibrations: unique lifts, fibers, actions, and the
presheaf-of-fibers inverse of the Grothendieck construction."""

from __future__ import annotations

from dataclasses import dataclass

from .dblcat import (
    DoubleCat,
    DoubleFunctor,
    VerticalTransformation,
    is_double_iso,
    slice_double,
    validate_double_functor,
)
from .fincat import (
    FinCat,
    FinFunctor,
    NatTrans,
    ProfMorphism,

    check_two_sided_fibration,
    compose_profunctors,
    fib,
    identity_functor,
    identity_profunctor,
    make_prof_morphism,
    product_category,
)
from .presheaf import (
    GlobularModification,
    HorizontalTransf,
    LaxDoublePresheaf,
    make_presheaf,
)
from .util import ValidationReport, idkey


@dataclass(frozen=True, eq=False)
class DiscreteDoubleFibration:
    """A double functor with verified unique-lift tables."""

    functor: DoubleFunctor
    hlift: dict  # (object e of total, hmor f: x -> P e) -> hmor of total
    sqlift: dict  # (vmor v of total, square a with right edge P v) -> square

    @property
    def total(self):
        return self.functor.source

    @property
    def base(self):
        return self.functor.target

    def pull_obj(self, f, e):
        """f* e: source of the unique horizontal lift of f with target e."""
        return self.total.hsrc(self.hlift[(e, f)])

    def pull_vmor(self, a, v):
        """a* v: left edge of the unique square lift of a with right edge v."""
        return self.total.left(self.sqlift[(v, a)])


def check_dfib(p: DoubleFunctor):
    """DiscreteDoubleFibration on success, a witnessed report on failure."""
    total, base = p.source, p.target
    report = ValidationReport(f"discrete double fibration {total.name} -> {base.name}")
    hmors_by_target = {}
    for fm, (s, t) in total.hmors.items():
        hmors_by_target.setdefault(t, []).append(fm)
    hlift = {}
    for e in total.objects:
        pe = p.ob(e)
        for f in base.hmors:
            if base.htgt(f) != pe:
                continue
            cands = [m for m in hmors_by_target.get(e, ())
                     if p.hmor(m) == f]
            if len(cands) == 1:
                hlift[(e, f)] = cands[0]
            else:
                report.add("hmor-lift-unique", (e, f),
                           f"{len(cands)} lifts: {sorted(cands, key=idkey)}")
    squares_by_right = {}
    for sq in total.squares:
        squares_by_right.setdefault(total.right(sq), []).append(sq)
    sqlift = {}
    for v in total.vmors:
        pv = p.vmor(v)
        for a in base.squares:
            if base.right(a) != pv:
                continue
            cands = [sq for sq in squares_by_right.get(v, ())
                     if p.square(sq) == a]
            if len(cands) == 1:
                sqlift[(v, a)] = cands[0]
            else:
                report.add("square-lift-unique", (v, a),
                           f"{len(cands)} lifts: {sorted(cands, key=idkey)}")
    if not report.ok:
        return report
    return DiscreteDoubleFibration(p, hlift, sqlift)


def identity_fibration(d: DoubleCat) -> DiscreteDoubleFibration:
    from .dblcat import identity_double_functor
    w = check_dfib(identity_double_functor(d))
    if isinstance(w, ValidationReport):
        raise RuntimeError(f"identity functor failed the fibration check:\n{w}")
    return w


def slice_fibration(d: DoubleCat, xh) -> DiscreteDoubleFibration:
    _, proj = slice_double(d, xh)
    w = check_dfib(proj)
    if isinstance(w, ValidationReport):
        raise RuntimeError(f"slice projection failed the fibration check:\n{w}")
    return w


# ---------------------------------------------------------------------------
# fibers
# ---------------------------------------------------------------------------


def fiber_object(d: DiscreteDoubleFibration, x) -> FinCat:
    """Objects over x and vertical morphisms over the vertical identity."""
    total, base = d.total, d.base
    p = d.functor
    ex = base.vid[x]
    objects = tuple(sorted((e for e in total.objects if p.ob(e) == x), key=idkey))
    morphisms = {u: total.vmors[u] for u in total.vmors if p.vmor(u) == ex}
    identity = {e: total.vid[e] for e in objects}
    composition = {}
    for u2 in morphisms:
        for u1 in morphisms:
            if total.vtgt(u1) == total.vsrc(u2):
                composition[(u2, u1)] = total.vcomp_v[(u2, u1)]
    return FinCat(f"fiber({total.name}@{x})", objects, morphisms, identity,
                  composition)


def fiber_vertical(d: DiscreteDoubleFibration, u, fx=None, fxp=None):
    """The fiber category over a vertical morphism and its two-sided fibration."""
    total, base = d.total, d.base
    p = d.functor
    x, xp = base.vmors[u]
    fx = fx if fx is not None else fiber_object(d, x)
    fxp = fxp if fxp is not None else fiber_object(d, xp)
    objects = tuple(sorted((v for v in total.vmors if p.vmor(v) == u), key=idkey))
    morphisms = {}
    for v in objects:
        for vh in objects:
            for s in fx.hom(total.vsrc(v), total.vsrc(vh)):
                for sp in fxp.hom(total.vtgt(v), total.vtgt(vh)):
                    if total.vcomp_v[(vh, s)] == total.vcomp_v[(sp, v)]:
                        morphisms[(v, vh, s, sp)] = (v, vh)
    identity = {v: (v, v, fx.identity[total.vsrc(v)], fxp.identity[total.vtgt(v)])
                for v in objects}
    composition = {}
    for m2 in morphisms:
        for m1 in morphisms:
            if m1[1] != m2[0]:
                continue
            composition[(m2, m1)] = (m1[0], m2[1], fx.compose(m2[2], m1[2]),
                                     fxp.compose(m2[3], m1[3]))
    cat = FinCat(f"fiber({total.name}@{u})", objects, morphisms, identity,
                 composition)
    prod = product_category(fx, fxp)
    fun = FinFunctor(cat, prod,
                     {v: (total.vsrc(v), total.vtgt(v)) for v in objects},
                     {m: (m[2], m[3]) for m in morphisms})
    w = check_two_sided_fibration(fun)
    if isinstance(w, ValidationReport):
        raise RuntimeError(f"fiber over {u!r} is not a two-sided fibration:\n{w}")
    return cat, w


@dataclass(frozen=True, eq=False)
class FiberData:
    """All fibers of a fibration, at objects and at vertical morphisms."""

    at_object: dict  # object -> FinCat
    at_vertical: dict  # vmor -> (FinCat, TwoSidedFibWitness)


def fibers(d: DiscreteDoubleFibration) -> FiberData:
    at_object = {x: fiber_object(d, x) for x in d.base.objects}
    at_vertical = {}
    for u, (x, xp) in d.base.vmors.items():
        at_vertical[u] = fiber_vertical(d, u, fx=at_object[x],
                                        fxp=at_object[xp])
    return FiberData(at_object, at_vertical)


def hmor_action(d: DiscreteDoubleFibration, f, source=None, target=None) -> FinFunctor:
    """f*: fiber over the target of f to the fiber over its source."""
    base = d.base
    x, y = base.hmors[f]
    src = source if source is not None else fiber_object(d, y)
    tgt = target if target is not None else fiber_object(d, x)
    ef = base.vid_sq[f]
    return FinFunctor(src, tgt,
                      {e: d.pull_obj(f, e) for e in src.objects},
                      {s: d.pull_vmor(ef, s) for s in src.morphisms})


def square_action(d: DiscreteDoubleFibration, a, source=None, target=None) -> FinFunctor:
    """a*: fiber over the right edge of a to the fiber over its left edge."""
    base = d.base
    top, bottom, left, right = base.squares[a]
    src = source if source is not None else fiber_vertical(d, right)[0]
    tgt = target if target is not None else fiber_vertical(d, left)[0]
    etop = base.vid_sq[top]
    ebot = base.vid_sq[bottom]
    on_objects = {v: d.pull_vmor(a, v) for v in src.objects}
    on_morphisms = {}
    for (v, vh, s, sp) in src.morphisms:
        on_morphisms[(v, vh, s, sp)] = (on_objects[v], on_objects[vh],
                                        d.pull_vmor(etop, s),
                                        d.pull_vmor(ebot, sp))
    return FinFunctor(src, tgt, on_objects, on_morphisms)


# ---------------------------------------------------------------------------
# the presheaf of fibers
# ---------------------------------------------------------------------------


def ddel(d: DiscreteDoubleFibration) -> LaxDoublePresheaf:
    """Fibers as a lax double presheaf over the base."""
    total, base = d.total, d.base
    on_obj = {x: fiber_object(d, x) for x in base.objects}
    witnesses = {}
    on_vmor = {}
    for u, (x, xp) in base.vmors.items():
        if u == base.vid[x]:
            on_vmor[u] = identity_profunctor(on_obj[x])
        else:
            _, w = fiber_vertical(d, u, fx=on_obj[x], fxp=on_obj[xp])
            witnesses[u] = w
            prof = fib(w)
            on_vmor[u] = prof
    on_hmor = {}
    for f, (x, y) in base.hmors.items():
        on_hmor[f] = hmor_action(d, f, source=on_obj[y], target=on_obj[x])
    on_square = {}
    for a, (top, bottom, left, right) in base.squares.items():

        def fn(e1, e2, v, a=a):
            return d.pull_vmor(a, v)

        on_square[a] = make_prof_morphism(f"fibers({a})", on_vmor[right],
                                          on_vmor[left], on_hmor[top],
                                          on_hmor[bottom], fn)
    mu = {}
    for (u2, u1), u21 in base.vcomp_v.items():
        x = base.vsrc(u1)
        x2 = base.vtgt(u2)
        if u1 == base.vid[x] or u2 == base.vid[x2]:
            continue  # identity comparisons are filled by make_presheaf
        comp = compose_profunctors(on_vmor[u1], on_vmor[u2])
        mapping = {}
        for pair, table in comp.composite_of.class_of.items():
            out = {}
            for (mid, s, t), cls in table.items():
                value = total.vcomp_v[(s, t)]
                if out.get(cls, value) != value:
                    raise AssertionError(
                        f"vertical composition not constant on coend class {cls}")
                out[cls] = value
            mapping[pair] = out
        mu[(u1, u2)] = ProfMorphism(f"mu({u1},{u2})", comp, on_vmor[u21],
                                    identity_functor(comp.source),
                                    identity_functor(comp.target), mapping)
    return make_presheaf(f"fibers({total.name})", base, on_obj, on_hmor,
                         on_vmor, on_square, mu)


def ddel_morphism(f: DoubleFunctor, p: DiscreteDoubleFibration,
                  q: DiscreteDoubleFibration, xp=None, xq=None) -> HorizontalTransf:
    """The transformation of fiber presheaves induced by a functor over the base."""
    base = p.base
    xp = xp if xp is not None else ddel(p)
    xq = xq if xq is not None else ddel(q)
    at_obj = {}
    for x in base.objects:
        src = xp.on_obj[x]
        tgt = xq.on_obj[x]
        at_obj[x] = FinFunctor(src, tgt,
                               {e: f.ob(e) for e in src.objects},
                               {u: f.vmor(u) for u in src.morphisms})
    at_vmor = {}
    for u, (s, t) in base.vmors.items():

        def fn(e1, e2, v):
            return f.vmor(v)

        at_vmor[u] = make_prof_morphism(f"fibers({u})", xp.on_vmor[u],
                                        xq.on_vmor[u], at_obj[s], at_obj[t], fn)
    return HorizontalTransf(f"fibers-of-functor", xp, xq, at_obj, at_vmor)


def ddel_2morphism(a: VerticalTransformation, p: DiscreteDoubleFibration,
                   q: DiscreteDoubleFibration, fsrc=None, ftgt=None) -> GlobularModification:
    """The modification of fiber presheaves induced by a vertical transformation."""
    base = p.base
    src = fsrc if fsrc is not None else ddel_morphism(a.source, p, q)
    tgt = ftgt if ftgt is not None else ddel_morphism(a.target, p, q)
    at_obj = {}
    for x in base.objects:
        here = src.at_obj[x].source
        at_obj[x] = NatTrans(src.at_obj[x], tgt.at_obj[x],
                             {e: a.at_obj[e] for e in here.objects})
    return GlobularModification("fibers-of-transformation", src, tgt, at_obj)


# ---------------------------------------------------------------------------
# slices through a fibration
# ---------------------------------------------------------------------------


def phi_fibrational(d: DiscreteDoubleFibration, xhm) -> DoubleFunctor:
    """The lift-built functor from the base slice at P(xhm) into the total."""
    total, base = d.total, d.base
    p = d.functor
    xh = p.ob(xhm)
    slice_total, _ = slice_double(base, xh)
    exhm = total.vid[xhm]
    on_objects = {}
    for (x, g) in slice_total.objects:
        on_objects[(x, g)] = d.pull_obj(g, xhm)
    on_hmors = {}
    for (f, h) in slice_total.hmors:
        on_hmors[(f, h)] = d.hlift[(d.pull_obj(h, xhm), f)]
    on_vmors = {}
    for eta in slice_total.vmors:
        on_vmors[eta] = d.pull_vmor(eta, exhm)
    on_squares = {}
    for (alpha, theta) in slice_total.squares:
        on_squares[(alpha, theta)] = d.sqlift[(d.pull_vmor(theta, exhm), alpha)]
    return DoubleFunctor(slice_total, total, on_objects, on_hmors, on_vmors,
                         on_squares)


@dataclass(frozen=True, eq=False)
class IsoReport:
    functor: DoubleFunctor  # the comparison E/xhm -> C/P(xhm)
    ver0_iso: bool
    full_iso: bool
    report: ValidationReport

    @property
    def is_iso(self):
        return self.report.ok and self.ver0_iso


def slice_comparison(d: DiscreteDoubleFibration, xhm) -> IsoReport:
    """P restricted to slices, checked for isomorphism on the vertical part."""
    total, base = d.total, d.base
    p = d.functor
    xh = p.ob(xhm)
    e_slice, _ = slice_double(total, xhm)
    c_slice, _ = slice_double(base, xh)
    fun = DoubleFunctor(
        e_slice, c_slice,
        {(e, g): (p.ob(e), p.hmor(g)) for (e, g) in e_slice.objects},
        {(f, h): (p.hmor(f), p.hmor(h)) for (f, h) in e_slice.hmors},
        {eta: p.square(eta) for eta in e_slice.vmors},
        {(alpha, theta): (p.square(alpha), p.square(theta))
         for (alpha, theta) in e_slice.squares})
    report = validate_double_functor(fun)
    ver0 = (len(set(fun.on_objects.values())) == len(e_slice.objects)
            == len(c_slice.objects)
            and len(set(fun.on_vmors.values())) == len(e_slice.vmors)
            == len(c_slice.vmors))
    full = is_double_iso(fun)
    return IsoReport(fun, ver0, full, report)
