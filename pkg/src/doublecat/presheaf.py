"""Category-valued normal lax double presheaves and the Yoneda isomorphism.

A presheaf assigns a category to each object of a base double category, a
functor (contravariantly) to each horizontal morphism, a profunctor to each
vertical morphism, a profunctor morphism to each square, and composition
comparison maps mu for composable vertical pairs.  ``mu`` is keyed by
``(u, u2)`` with ``u`` on top, i.e. the comparison into ``X(u2•u)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .dblcat import DoubleCat, hom_category, hom_mu, hom_profunctor
from .fincat import (
    FinFunctor,
    NatTrans,
    ProfMorphism,
    Profunctor,
    compose_functors,
    compose_profunctors,
    compose_prof_morphisms_over,
    composite_class_of,
    coend_member,
    enumerate_functors,
    enumerate_nat_trans,
    functor_tables_equal,
    identity_functor,
    identity_prof_morphism,
    identity_profunctor,
    invert_functor_iso,
    is_functor_iso,
    make_prof_morphism,
    prof_morphism_bijective,
    same_category,
    validate_category,
    validate_functor,
    validate_nat_trans,
    validate_prof_morphism,
    validate_profunctor,
    associator,
)
from .util import BudgetExceeded, ValidationReport, idkey


@dataclass(frozen=True, eq=False)
class LaxDoublePresheaf:
    name: str
    base: DoubleCat
    on_obj: dict  # object -> FinCat
    on_hmor: dict  # hmor f: x->y -> FinFunctor X(y) -> X(x)
    on_vmor: dict  # vmor u -> Profunctor X(src u) -|-> X(tgt u)
    on_square: dict  # square -> ProfMorphism X(right) => X(left) over the tops
    mu: dict  # (u, u2) -> ProfMorphism X(u2)∙X(u) => X(u2•u)

    def value(self, x):
        return self.on_obj[x]

    def functor(self, f):
        return self.on_hmor[f]

    def prof(self, u):
        return self.on_vmor[u]

    def square_map(self, s):
        return self.on_square[s]

    def mu_at(self, u, u2):
        return self.mu[(u, u2)]


def make_presheaf(name, base, on_obj, on_hmor, on_vmor, on_square, mu):
    """Fill identity mu entries and wrap the tables."""
    mu = dict(mu)
    for (u2, u1), _ in base.vcomp_v.items():
        key = (u1, u2)
        if key in mu:
            continue
        x = base.vsrc(u1)
        x2 = base.vtgt(u2)
        if u1 == base.vid[x]:
            other = on_vmor[u2]
        elif u2 == base.vid[x2]:
            other = on_vmor[u1]
        else:
            raise ValueError(f"missing mu entry for non-identity pair {key}")
        mapping = {pair: {e: e for e in els} for pair, els in other.elements.items()}
        mu[key] = ProfMorphism(f"mu{key}", other, on_vmor[base.vcomp_v[(u2, u1)]],
                               identity_functor(other.source),
                               identity_functor(other.target), mapping)
    return LaxDoublePresheaf(name, base, dict(on_obj), dict(on_hmor),
                             dict(on_vmor), dict(on_square), mu)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _prof_morphism_tables_equal(a: ProfMorphism, b: ProfMorphism) -> bool:
    return a.mapping == b.mapping


def validate_presheaf(x: LaxDoublePresheaf) -> ValidationReport:
    base = x.base
    report = ValidationReport(f"presheaf {x.name}")
    for ob in base.objects:
        cat = x.on_obj.get(ob)
        if cat is None:
            report.add("value-missing", (ob,))
            continue
        sub = validate_category(cat)
        if not sub.ok:
            report.add("value-invalid", (ob,), str(sub))
    if not report.ok:
        return report

    for f, (s, t) in base.hmors.items():
        fun = x.on_hmor.get(f)
        if fun is None:
            report.add("hmor-value-missing", (f,))
            continue
        if not (same_category(fun.source, x.on_obj[t])
                and same_category(fun.target, x.on_obj[s])):
            report.add("hmor-value-boundary", (f,))
            continue
        sub = validate_functor(fun)
        if not sub.ok:
            report.add("hmor-value-invalid", (f,), str(sub))
    for u, (s, t) in base.vmors.items():
        prof = x.on_vmor.get(u)
        if prof is None:
            report.add("vmor-value-missing", (u,))
            continue
        if not (same_category(prof.source, x.on_obj[s])
                and same_category(prof.target, x.on_obj[t])):
            report.add("vmor-value-boundary", (u,))
            continue
        sub = validate_profunctor(prof)
        if not sub.ok:
            report.add("vmor-value-invalid", (u,), str(sub))
    if not report.ok:
        return report

    # normality on objects
    for ob in base.objects:
        prof = x.on_vmor[base.vid[ob]]
        if prof.identity_of is None or not same_category(prof.source, x.on_obj[ob]):
            report.add("normality-identity-profunctor", (ob,))

    # squares
    for s, (top, bottom, left, right) in base.squares.items():
        pm = x.on_square.get(s)
        if pm is None:
            report.add("square-value-missing", (s,))
            continue
        if not (pm.source is x.on_vmor[right]
                or (pm.source.elements == x.on_vmor[right].elements
                    and pm.source.action == x.on_vmor[right].action)):
            report.add("square-value-source", (s,))
            continue
        if not (pm.target is x.on_vmor[left]
                or (pm.target.elements == x.on_vmor[left].elements
                    and pm.target.action == x.on_vmor[left].action)):
            report.add("square-value-target", (s,))
            continue
        if not (functor_tables_equal(pm.left, x.on_hmor[top])
                and functor_tables_equal(pm.right, x.on_hmor[bottom])):
            report.add("square-value-functors", (s,))
            continue
        sub = validate_prof_morphism(pm)
        if not sub.ok:
            report.add("square-value-invalid", (s,), str(sub))
    if not report.ok:
        return report

    # strict horizontal functoriality
    for ob in base.objects:
        fun = x.on_hmor[base.hid[ob]]
        ident = identity_functor(x.on_obj[ob])
        if not functor_tables_equal(fun, ident):
            report.add("hid-functoriality", (ob,))
        pm = x.on_square[base.vid_sq[base.hid[ob]]]
        if any(pm.mapping[pair][e] != e for pair in pm.mapping
               for e in pm.mapping[pair]):
            report.add("esq-functoriality", (ob,))
    for (g, f), gf in base.hcomp_h.items():
        lhs = x.on_hmor[gf]
        rhs = compose_functors(x.on_hmor[f], x.on_hmor[g])
        if not functor_tables_equal(lhs, rhs):
            report.add("hcomp-functoriality", (g, f))
    for u in base.vmors:
        pm = x.on_square[base.hid_sq[u]]
        if any(pm.mapping[pair][e] != e for pair in pm.mapping
               for e in pm.mapping[pair]):
            report.add("hid-square-functoriality", (u,))
    for f in base.hmors:
        pm = x.on_square[base.vid_sq[f]]
        fun = x.on_hmor[f]
        for pair in pm.mapping:
            for e, img in pm.mapping[pair].items():
                if img != fun.on_morphisms.get(e):
                    report.add("vid-square-normality", (f, e))
    for (b, a), s in base.hcomp_sq.items():
        pmb, pma, pms = x.on_square[b], x.on_square[a], x.on_square[s]
        ftop = x.on_hmor[base.top(b)]
        fbot = x.on_hmor[base.bottom(b)]
        for pair, comp in pms.mapping.items():
            y, yp = pair
            for e, img in comp.items():
                step = pmb.mapping[pair][e]
                want = pma.mapping[(ftop.ob(y), fbot.ob(yp))][step]
                if img != want:
                    report.add("hcomp-square-functoriality", (b, a, e))
    if not report.ok:
        return report

    # mu structure
    for (u2, u1), u21 in base.vcomp_v.items():
        key = (u1, u2)
        pm = x.mu.get(key)
        if pm is None:
            report.add("mu-missing", key)
            continue
        canon = compose_profunctors(x.on_vmor[u1], x.on_vmor[u2])
        if not (pm.source.elements == canon.elements
                and pm.source.action == canon.action):
            report.add("mu-source", key)
            continue
        if not (pm.target is x.on_vmor[u21]
                or (pm.target.elements == x.on_vmor[u21].elements
                    and pm.target.action == x.on_vmor[u21].action)):
            report.add("mu-target", key)
            continue
        sub = validate_prof_morphism(pm)
        if not sub.ok:
            report.add("mu-invalid", key, str(sub))
            continue
        if (u1 == base.vid[base.vsrc(u1)] or u2 == base.vid[base.vtgt(u2)]):
            if any(pm.mapping[pair][e] != e for pair in pm.mapping
                   for e in pm.mapping[pair]):
                report.add("mu-normality", key)
    if not report.ok:
        return report

    # naturality of mu in (u, u2): all vertically composable square pairs
    for (b, a), s in base.vcomp_sq.items():
        v1_, v2_ = base.right(a), base.right(b)
        u1_, u2_ = base.left(a), base.left(b)
        canon_v = compose_profunctors(x.on_vmor[v1_], x.on_vmor[v2_])
        canon_u = compose_profunctors(x.on_vmor[u1_], x.on_vmor[u2_])
        mu_v = x.mu[(v1_, v2_)]
        mu_u = x.mu[(u1_, u2_)]
        pms = x.on_square[s]
        cross = compose_prof_morphisms_over(x.on_square[a], x.on_square[b],
                                            canon_v, canon_u)
        for pair, els in canon_v.elements.items():
            y, ypp = pair
            tgt_pair = (x.on_hmor[base.top(a)].ob(y),
                        x.on_hmor[base.bottom(b)].ob(ypp))
            for e in els:
                lhs = pms.mapping[pair][mu_v.mapping[pair][e]]
                rhs = mu_u.mapping[tgt_pair][cross.mapping[pair][e]]
                if lhs != rhs:
                    report.add("mu-naturality", (b, a, e))
    if not report.ok:
        return report

    # compatibility of mu with the canonical associator
    triples = [(u1, u2, u3)
               for (u2, u1) in base.vcomp_v
               for u3 in base.vmors
               if base.vtgt(u2) == base.vsrc(u3)]
    for (u1, u2, u3) in sorted(set(triples), key=idkey):
        a_, b_, c_ = x.on_vmor[u1], x.on_vmor[u2], x.on_vmor[u3]
        w12 = base.vcomp_v[(u2, u1)]
        w23 = base.vcomp_v[(u3, u2)]
        w123 = base.vcomp_v[(u3, w12)]
        comp23 = compose_profunctors(b_, c_)
        comp12 = compose_profunctors(a_, b_)
        left = compose_profunctors(a_, comp23)
        right = compose_profunctors(comp12, c_)
        src_1_23 = compose_profunctors(a_, x.on_vmor[w23])
        src_12_3 = compose_profunctors(x.on_vmor[w12], c_)
        ass = associator(a_, b_, c_)
        mu_bc = x.mu[(u2, u3)]
        mu_ab = x.mu[(u1, u2)]
        mu_1_23 = x.mu[(u1, w23)]
        mu_12_3 = x.mu[(w12, u3)]
        for pair, els in left.elements.items():
            x0, x3 = pair
            for e in els:
                m, s_, t_ = coend_member(a_, comp23, left, x0, x3, e)
                s1 = mu_bc.mapping[(m, x3)][s_]
                cls1 = composite_class_of(a_, x.on_vmor[w23], src_1_23,
                                          x0, x3, m, s1, t_)
                path1 = mu_1_23.mapping[pair][cls1]
                e2 = e if ass is None else ass[pair][e]
                m2, s2, t2 = coend_member(comp12, c_, right, x0, x3, e2)
                t3 = mu_ab.mapping[(x0, m2)][t2]
                cls2 = composite_class_of(x.on_vmor[w12], c_, src_12_3,
                                          x0, x3, m2, s2, t3)
                path2 = mu_12_3.mapping[pair][cls2]
                if path1 != path2:
                    report.add("mu-associativity", (u1, u2, u3, e))
    return report


# ---------------------------------------------------------------------------
# representables and constants
# ---------------------------------------------------------------------------


def representable(d: DoubleCat, xh) -> LaxDoublePresheaf:
    """Horizontal morphisms into xh, with hom-profunctor vertical values."""
    if xh not in set(d.objects):
        raise ValueError(f"{xh!r} is not an object of {d.name}")
    on_obj = {x: hom_category(d, x, xh) for x in d.objects}
    on_hmor = {}
    for f, (s, t) in d.hmors.items():
        src = on_obj[t]
        tgt = on_obj[s]
        on_hmor[f] = FinFunctor(
            src, tgt,
            {g: d.hcomp_h[(g, f)] for g in src.objects},
            {m: d.hcomp_sq[(m, d.vid_sq[f])] for m in src.morphisms})
    exh = d.vid[xh]
    on_vmor = {}
    for u, (s, t) in d.vmors.items():
        if u == d.vid[s]:
            on_vmor[u] = identity_profunctor(on_obj[s])
        else:
            on_vmor[u] = hom_profunctor(d, u, exh, source=on_obj[s],
                                        target=on_obj[t])
    on_square = {}
    for sq, (top, bottom, left, right) in d.squares.items():
        src_prof = on_vmor[right]
        tgt_prof = on_vmor[left]

        def fn(g, gp, e, sq=sq):
            return d.hcomp_sq[(e, sq)]

        on_square[sq] = make_prof_morphism(f"{d.name}({sq},{xh})", src_prof,
                                           tgt_prof, on_hmor[top],
                                           on_hmor[bottom], fn)
    mu = {}
    for (u2, u1), u21 in d.vcomp_v.items():
        if u1 == d.vid[d.vsrc(u1)] or u2 == d.vid[d.vtgt(u2)]:
            continue  # filled by make_presheaf
        mu[(u1, u2)] = hom_mu(d, (u1, exh), (u2, exh), first=on_vmor[u1],
                              second=on_vmor[u2], target=on_vmor[u21])
    return make_presheaf(f"{d.name}(-,{xh})", d, on_obj, on_hmor, on_vmor,
                         on_square, mu)


def constant_presheaf(d: DoubleCat, k) -> LaxDoublePresheaf:
    """Constant value k everywhere; all structure maps are identities."""
    ident = identity_profunctor(k)
    idfun = identity_functor(k)
    on_obj = {x: k for x in d.objects}
    on_hmor = {f: idfun for f in d.hmors}
    on_vmor = {u: ident for u in d.vmors}
    on_square = {s: identity_prof_morphism(ident) for s in d.squares}
    mu = {(u1, u2): identity_prof_morphism(ident)
          for (u2, u1) in d.vcomp_v}
    return make_presheaf(f"const({d.name},{k.name})", d, on_obj, on_hmor,
                         on_vmor, on_square, mu)


# ---------------------------------------------------------------------------
# transformations and modifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HorizontalTransf:
    name: str
    source: LaxDoublePresheaf
    target: LaxDoublePresheaf
    at_obj: dict  # object -> FinFunctor
    at_vmor: dict  # vmor -> ProfMorphism


@dataclass(frozen=True, eq=False)
class GlobularModification:
    name: str
    source: HorizontalTransf
    target: HorizontalTransf
    at_obj: dict  # object -> NatTrans


def transformation_tables_equal(f: HorizontalTransf, g: HorizontalTransf) -> bool:
    if set(f.at_obj) != set(g.at_obj) or set(f.at_vmor) != set(g.at_vmor):
        return False
    return (all(functor_tables_equal(f.at_obj[x], g.at_obj[x]) for x in f.at_obj)
            and all(f.at_vmor[u].mapping == g.at_vmor[u].mapping
                    for u in f.at_vmor))


def modification_tables_equal(a: GlobularModification, b: GlobularModification) -> bool:
    return (set(a.at_obj) == set(b.at_obj)
            and all(a.at_obj[x].components == b.at_obj[x].components
                    for x in a.at_obj))


def identity_transformation(x: LaxDoublePresheaf) -> HorizontalTransf:
    return HorizontalTransf(
        f"id({x.name})", x, x,
        {ob: identity_functor(x.on_obj[ob]) for ob in x.base.objects},
        {u: identity_prof_morphism(x.on_vmor[u]) for u in x.base.vmors})


def compose_transformations(second: HorizontalTransf,
                            first: HorizontalTransf) -> HorizontalTransf:
    x, z = first.source, second.target
    at_obj = {ob: compose_functors(second.at_obj[ob], first.at_obj[ob])
              for ob in x.base.objects}
    at_vmor = {}
    for u in x.base.vmors:
        fu, gu = first.at_vmor[u], second.at_vmor[u]

        def fn(a, b, e, fu=fu, gu=gu):
            mid = (fu.left.ob(a), fu.right.ob(b))
            return gu.mapping[mid][fu.mapping[(a, b)][e]]

        at_vmor[u] = make_prof_morphism(
            f"({second.name})({first.name})@{u}", x.on_vmor[u], z.on_vmor[u],
            at_obj[x.base.vsrc(u)], at_obj[x.base.vtgt(u)], fn)
    return HorizontalTransf(f"({second.name})o({first.name})", x, z, at_obj,
                            at_vmor)


def transformation_invertible(f: HorizontalTransf) -> bool:
    return (all(is_functor_iso(fun) for fun in f.at_obj.values())
            and all(prof_morphism_bijective(pm) for pm in f.at_vmor.values()))


def invert_transformation(f: HorizontalTransf) -> HorizontalTransf:
    if not transformation_invertible(f):
        raise ValueError("horizontal transformation is not invertible")
    x, y = f.source, f.target
    at_obj = {ob: invert_functor_iso(fun) for ob, fun in f.at_obj.items()}
    at_vmor = {}
    for u, pm in f.at_vmor.items():
        s, t = x.base.vsrc(u), x.base.vtgt(u)
        mapping = {}
        for (a, b), comp in pm.mapping.items():
            tgt_pair = (pm.left.ob(a), pm.right.ob(b))
            mapping.setdefault(tgt_pair, {}).update(
                {img: e for e, img in comp.items()})
        for pair, els in y.on_vmor[u].elements.items():
            mapping.setdefault(pair, {})
        at_vmor[u] = ProfMorphism(f"inv({pm.name})", y.on_vmor[u], x.on_vmor[u],
                                  at_obj[s], at_obj[t], mapping)
    return HorizontalTransf(f"inv({f.name})", y, x, at_obj, at_vmor)


def validate_horizontal_transformation(f: HorizontalTransf) -> ValidationReport:
    x, y = f.source, f.target
    base = x.base
    report = ValidationReport(f"horizontal transformation {f.name}")
    if y.base is not base and y.base.name != base.name:
        report.add("different-bases", ())
        return report
    for ob in base.objects:
        fun = f.at_obj.get(ob)
        if fun is None or not (same_category(fun.source, x.on_obj[ob])
                               and same_category(fun.target, y.on_obj[ob])):
            report.add("object-component-boundary", (ob,))
            continue
        sub = validate_functor(fun)
        if not sub.ok:
            report.add("object-component-invalid", (ob,), str(sub))
    if not report.ok:
        return report
    for h, (s, t) in base.hmors.items():
        lhs = compose_functors(f.at_obj[s], x.on_hmor[h])
        rhs = compose_functors(y.on_hmor[h], f.at_obj[t])
        if not functor_tables_equal(lhs, rhs):
            report.add("naturality-hmor", (h,))
    for u, (s, t) in base.vmors.items():
        pm = f.at_vmor.get(u)
        if pm is None:
            report.add("vmor-component-missing", (u,))
            continue
        if not (pm.source.elements == x.on_vmor[u].elements
                and pm.target.elements == y.on_vmor[u].elements
                and functor_tables_equal(pm.left, f.at_obj[s])
                and functor_tables_equal(pm.right, f.at_obj[t])):
            report.add("vmor-component-boundary", (u,))
            continue
        sub = validate_prof_morphism(pm)
        if not sub.ok:
            report.add("vmor-component-invalid", (u,), str(sub))
    if not report.ok:
        return report
    # identity components
    for ob in base.objects:
        pm = f.at_vmor[base.vid[ob]]
        fun = f.at_obj[ob]
        for pair, comp in pm.mapping.items():
            for e, img in comp.items():
                if img != fun.on_morphisms.get(e):
                    report.add("identity-component", (ob, e))
    # naturality in vmors against every square
    for sq, (top, bottom, left, right) in base.squares.items():
        xs, ys = x.on_square[sq], y.on_square[sq]
        fl, fr = f.at_vmor[left], f.at_vmor[right]
        xt, xb = x.on_hmor[top], x.on_hmor[bottom]
        for pair, comp in xs.mapping.items():
            a, b = pair
            for e, stepped in comp.items():
                lhs = fl.mapping[(xt.ob(a), xb.ob(b))][stepped]
                rhs = ys.mapping[(f.at_obj[base.htgt(top)].ob(a),
                                  f.at_obj[base.htgt(bottom)].ob(b))][
                                      fr.mapping[pair][e]]
                if lhs != rhs:
                    report.add("naturality-square", (sq, e))
    if not report.ok:
        return report
    # compatibility with mu
    for (u2, u1), u21 in base.vcomp_v.items():
        key = (u1, u2)
        canon_x = compose_profunctors(x.on_vmor[u1], x.on_vmor[u2])
        canon_y = compose_profunctors(y.on_vmor[u1], y.on_vmor[u2])
        cross = compose_prof_morphisms_over(f.at_vmor[u1], f.at_vmor[u2],
                                            canon_x, canon_y)
        mu_x, mu_y = x.mu[key], y.mu[key]
        f21 = f.at_vmor[u21]
        for pair, els in canon_x.elements.items():
            a, b = pair
            tgt_pair = (f.at_obj[base.vsrc(u1)].ob(a),
                        f.at_obj[base.vtgt(u2)].ob(b))
            for e in els:
                lhs = f21.mapping[pair][mu_x.mapping[pair][e]]
                rhs = mu_y.mapping[tgt_pair][cross.mapping[pair][e]]
                if lhs != rhs:
                    report.add("mu-compatibility", (u1, u2, e))
    return report


def validate_globular_modification(a: GlobularModification) -> ValidationReport:
    f, g = a.source, a.target
    x, y = f.source, f.target
    base = x.base
    report = ValidationReport(f"modification {a.name}")
    if f.source is not g.source or f.target is not g.target:
        report.add("parallel-transformations", ())
        return report
    for ob in base.objects:
        nt = a.at_obj.get(ob)
        if nt is None:
            report.add("component-missing", (ob,))
            continue
        if not (functor_tables_equal(nt.source, f.at_obj[ob])
                and functor_tables_equal(nt.target, g.at_obj[ob])):
            report.add("component-boundary", (ob,))
            continue
        sub = validate_nat_trans(nt)
        if not sub.ok:
            report.add("component-invalid", (ob,), str(sub))
    if not report.ok:
        return report
    for h, (s, t) in base.hmors.items():
        for o in x.on_obj[t].objects:
            lhs = a.at_obj[s].at(x.on_hmor[h].ob(o))
            rhs = y.on_hmor[h].mor(a.at_obj[t].at(o))
            if lhs != rhs:
                report.add("horizontal-compatibility", (h, o))
    for u, (s, t) in base.vmors.items():
        yu = y.on_vmor[u]
        for pair, els in x.on_vmor[u].elements.items():
            p, q = pair
            for e in els:
                lhs = yu.act(yu.source.identity[f.at_obj[s].ob(p)],
                             a.at_obj[t].at(q), f.at_vmor[u].mapping[pair][e])
                rhs = yu.act(a.at_obj[s].at(p),
                             yu.target.identity[g.at_obj[t].ob(q)],
                             g.at_vmor[u].mapping[pair][e])
                if lhs != rhs:
                    report.add("vertical-compatibility", (u, e))
    return report


def compose_modifications(second: GlobularModification,
                          first: GlobularModification) -> GlobularModification:
    """Vertical composite: first on top, then second."""
    at_obj = {}
    y = first.source.target
    for ob, nt1 in first.at_obj.items():
        nt2 = second.at_obj[ob]
        cat = y.on_obj[ob]
        at_obj[ob] = NatTrans(nt1.source, nt2.target,
                              {o: cat.compose(nt2.at(o), nt1.at(o))
                               for o in nt1.source.source.objects})
    return GlobularModification(f"({second.name})*({first.name})",
                                first.source, second.target, at_obj)


def identity_modification(f: HorizontalTransf) -> GlobularModification:
    y = f.target
    at_obj = {}
    for ob, fun in f.at_obj.items():
        cat = y.on_obj[ob]
        at_obj[ob] = NatTrans(fun, fun,
                              {o: cat.identity[fun.ob(o)] for o in fun.source.objects})
    return GlobularModification(f"id({f.name})", f, f, at_obj)


def postcompose_modification(f: HorizontalTransf,
                             nu: GlobularModification) -> GlobularModification:
    """Whisker nu by a following transformation f (f∘nu)."""
    src = compose_transformations(f, nu.source)
    tgt = compose_transformations(f, nu.target)
    at_obj = {}
    for ob, nt in nu.at_obj.items():
        at_obj[ob] = NatTrans(src.at_obj[ob], tgt.at_obj[ob],
                              {o: f.at_obj[ob].mor(nt.at(o))
                               for o in nt.source.source.objects})
    return GlobularModification(f"({f.name})o({nu.name})", src, tgt, at_obj)


def precompose_modification(nu: GlobularModification,
                            g: HorizontalTransf) -> GlobularModification:
    """Whisker nu by a preceding transformation g (nu∘g)."""
    src = compose_transformations(nu.source, g)
    tgt = compose_transformations(nu.target, g)
    at_obj = {}
    for ob, nt in nu.at_obj.items():
        at_obj[ob] = NatTrans(src.at_obj[ob], tgt.at_obj[ob],
                              {o: nt.at(g.at_obj[ob].ob(o))
                               for o in g.at_obj[ob].source.objects})
    return GlobularModification(f"({nu.name})o({g.name})", src, tgt, at_obj)


# ---------------------------------------------------------------------------
# representable transformations and modifications
# ---------------------------------------------------------------------------


def representable_morphism(d: DoubleCat, fh, source=None, target=None) -> HorizontalTransf:
    """Post-composition with fh as a transformation of representables."""
    xh, yh = d.hsrc(fh), d.htgt(fh)
    x = source if source is not None else representable(d, xh)
    y = target if target is not None else representable(d, yh)
    efh = d.vid_sq[fh]
    at_obj = {}
    for ob in d.objects:
        src = x.on_obj[ob]
        at_obj[ob] = FinFunctor(src, y.on_obj[ob],
                                {g: d.hcomp_h[(fh, g)] for g in src.objects},
                                {m: d.hcomp_sq[(efh, m)] for m in src.morphisms})
    at_vmor = {}
    for u, (s, t) in d.vmors.items():

        def fn(g, gp, e):
            return d.hcomp_sq[(efh, e)]

        at_vmor[u] = make_prof_morphism(f"{d.name}({u},{fh})", x.on_vmor[u],
                                        y.on_vmor[u], at_obj[s], at_obj[t], fn)
    return HorizontalTransf(f"{d.name}(-,{fh})", x, y, at_obj, at_vmor)


def representable_modification(d: DoubleCat, ah, source=None,
                               target=None) -> GlobularModification:
    """Vertical pasting with a globular square ah, between representable morphisms."""
    top, bottom, left, right = d.squares[ah]
    if left != d.vid[d.hsrc(top)] or right != d.vid[d.htgt(top)]:
        raise ValueError(f"{ah!r} is not globular")
    fh, fh2 = top, bottom
    xrep = representable(d, d.hsrc(fh)) if source is None else source.source
    yrep = representable(d, d.htgt(fh)) if source is None else source.target
    f = source if source is not None else representable_morphism(
        d, fh, source=xrep, target=yrep)
    g = target if target is not None else representable_morphism(
        d, fh2, source=xrep, target=yrep)
    at_obj = {}
    for ob in d.objects:
        src = f.at_obj[ob].source
        at_obj[ob] = NatTrans(f.at_obj[ob], g.at_obj[ob],
                              {o: d.hcomp_sq[(ah, d.vid_sq[o])]
                               for o in src.objects})
    return GlobularModification(f"{d.name}(-,{ah})", f, g, at_obj)


# ---------------------------------------------------------------------------
# Yoneda
# ---------------------------------------------------------------------------


def yoneda_psi(x: LaxDoublePresheaf, xh, phi: HorizontalTransf):
    """Evaluate a transformation out of the representable at the identity."""
    rep = phi.source
    if not same_category(rep.on_obj[xh], hom_category(x.base, xh, xh)):
        raise ValueError("source of phi is not the representable at xh")
    return phi.at_obj[xh].ob(x.base.hid[xh])


def yoneda_psi_modification(x: LaxDoublePresheaf, xh, nu: GlobularModification):
    return nu.at_obj[xh].at(x.base.hid[xh])


def yoneda_phi(x: LaxDoublePresheaf, xh, xm, rep=None) -> HorizontalTransf:
    """The transformation classified by an object xm of X(xh)."""
    base = x.base
    rep = rep if rep is not None else representable(base, xh)
    if xm not in set(x.on_obj[xh].objects):
        raise ValueError(f"{xm!r} is not an object of the value at {xh!r}")
    one = x.on_obj[xh].identity[xm]
    at_obj = {}
    for ob in base.objects:
        src = rep.on_obj[ob]
        at_obj[ob] = FinFunctor(
            src, x.on_obj[ob],
            {g: x.on_hmor[g].ob(xm) for g in src.objects},
            {m: x.on_square[m].mapping[(xm, xm)][one] for m in src.morphisms})
    at_vmor = {}
    for u, (s, t) in base.vmors.items():

        def fn(g, gp, e):
            return x.on_square[e].mapping[(xm, xm)][one]

        at_vmor[u] = make_prof_morphism(f"phi({xm})@{u}", rep.on_vmor[u],
                                        x.on_vmor[u], at_obj[s], at_obj[t], fn)
    return HorizontalTransf(f"phi({xm})", rep, x, at_obj, at_vmor)


def yoneda_phi_morphism(x: LaxDoublePresheaf, xh, um, rep=None,
                        phi_src=None, phi_tgt=None) -> GlobularModification:
    """The modification classified by a morphism um of X(xh)."""
    base = x.base
    rep = rep if rep is not None else representable(base, xh)
    cat = x.on_obj[xh]
    xm, xm2 = cat.src(um), cat.tgt(um)
    src = phi_src if phi_src is not None else yoneda_phi(x, xh, xm, rep=rep)
    tgt = phi_tgt if phi_tgt is not None else yoneda_phi(x, xh, xm2, rep=rep)
    at_obj = {}
    for ob in base.objects:
        here = rep.on_obj[ob]
        at_obj[ob] = NatTrans(src.at_obj[ob], tgt.at_obj[ob],
                              {g: x.on_hmor[g].mor(um) for g in here.objects})
    return GlobularModification(f"phi({um})", src, tgt, at_obj)


# ---------------------------------------------------------------------------
# brute-force enumeration oracles
# ---------------------------------------------------------------------------


def _mapping_candidates(xu: Profunctor, yu: Profunctor, fs: FinFunctor,
                        ft: FinFunctor, budget, spent):
    """All component-wise functions X(u) -> Y(u) over the object maps."""
    pairs = sorted(xu.elements, key=idkey)
    per_pair = []
    total = 1
    for pair in pairs:
        els = sorted(xu.elements[pair], key=idkey)
        tgt = sorted(yu.elements[(fs.ob(pair[0]), ft.ob(pair[1]))], key=idkey)
        if els and not tgt:
            return []
        total *= (len(tgt) ** len(els)) if els else 1
        if total > budget:
            raise BudgetExceeded("component mapping space exceeds budget")
        choices = list(iproduct(tgt, repeat=len(els))) if els else [()]
        per_pair.append((pair, els, choices))
    out = []
    for combo in iproduct(*(choices for _, _, choices in per_pair)):
        mapping = {}
        for (pair, els, _), chosen in zip(per_pair, combo):
            mapping[pair] = dict(zip(els, chosen))
        out.append(mapping)
    return out


def enumerate_transformations(source: LaxDoublePresheaf,
                              target: LaxDoublePresheaf, budget=10**6):
    """All horizontal transformations source => target, brute force."""
    base = source.base
    spent = [0]
    objs = sorted(base.objects, key=idkey)
    candidates = {}
    for ob in objs:
        candidates[ob] = enumerate_functors(source.on_obj[ob],
                                            target.on_obj[ob], budget=budget,
                                            _spent=spent)
        if not candidates[ob]:
            return []
    families = []

    def rec(idx, chosen):
        spent[0] += 1
        if spent[0] > budget:
            raise BudgetExceeded("transformation enumeration exceeded budget")
        if idx == len(objs):
            families.append(dict(chosen))
            return
        ob = objs[idx]
        for fun in candidates[ob]:
            chosen[ob] = fun
            ok = True
            for h, (s, t) in base.hmors.items():
                if s in chosen and t in chosen:
                    lhs = compose_functors(chosen[s], source.on_hmor[h])
                    rhs = compose_functors(target.on_hmor[h], chosen[t])
                    if not functor_tables_equal(lhs, rhs):
                        ok = False
                        break
            if ok:
                rec(idx + 1, chosen)
        chosen.pop(objs[idx], None)

    rec(0, {})
    results = []
    nonid_vmors = [u for u in sorted(base.vmors, key=idkey)
                   if u != base.vid[base.vsrc(u)]]
    for family in families:
        vm_choices = []
        feasible = True
        for u in nonid_vmors:
            s, t = base.vmors[u]
            cands = _mapping_candidates(source.on_vmor[u], target.on_vmor[u],
                                        family[s], family[t], budget, spent)
            if not cands:
                feasible = False
                break
            vm_choices.append((u, cands))
        if not feasible:
            continue
        for combo in iproduct(*(cands for _, cands in vm_choices)):
            spent[0] += 1
            if spent[0] > budget:
                raise BudgetExceeded("transformation enumeration exceeded budget")
            at_vmor = {}
            for ob in objs:
                u = base.vid[ob]
                fun = family[ob]
                mapping = {pair: {e: fun.mor(e) for e in els}
                           for pair, els in source.on_vmor[u].elements.items()}
                at_vmor[u] = ProfMorphism(f"cand@{u}", source.on_vmor[u],
                                          target.on_vmor[u], fun, fun, mapping)
            for (u, _), mapping in zip(vm_choices, combo):
                s, t = base.vmors[u]
                at_vmor[u] = ProfMorphism(f"cand@{u}", source.on_vmor[u],
                                          target.on_vmor[u], family[s],
                                          family[t], mapping)
            cand = HorizontalTransf("candidate", source, target, dict(family),
                                    at_vmor)
            if validate_horizontal_transformation(cand).ok:
                results.append(cand)
    return results


def enumerate_modifications(f: HorizontalTransf, g: HorizontalTransf,
                            budget=10**6):
    """All globular modifications f => g, brute force."""
    base = f.source.base
    objs = sorted(base.objects, key=idkey)
    per_obj = []
    total = 1
    for ob in objs:
        cands = enumerate_nat_trans(f.at_obj[ob], g.at_obj[ob])
        if not cands:
            return []
        total *= len(cands)
        if total > budget:
            raise BudgetExceeded("modification enumeration exceeded budget")
        per_obj.append((ob, cands))
    out = []
    for combo in iproduct(*(cands for _, cands in per_obj)):
        cand = GlobularModification(
            "candidate", f, g, {ob: nt for (ob, _), nt in zip(per_obj, combo)})
        if validate_globular_modification(cand).ok:
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# representability
# ---------------------------------------------------------------------------


def is_represented_by(x: LaxDoublePresheaf, xh, xm, rep=None) -> bool:
    """Componentwise invertibility of the classified transformation."""
    phi = yoneda_phi(x, xh, xm, rep=rep)
    return transformation_invertible(phi)
