"""Finite categories, functors, profunctors, coends, two-sided discrete fibrations.

Everything is a finite table keyed by opaque IDs (strings or tuples).  The
composition convention throughout is ``composition[(g, f)] = g∘f`` for
``f: x→y`` followed by ``g: y→z``.  Profunctor composition quotients the
disjoint union of pairwise products by the coequalizer relations; each class
is named by its smallest member under :func:`doublecat.util.idkey`, which
makes composites deterministic and the comparison between differently
bracketed triple composites an honest bijection check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from weakref import WeakKeyDictionary

from .util import BudgetExceeded, UnionFind, ValidationReport, idkey


# ---------------------------------------------------------------------------
# categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category: objects, morphisms with boundaries, total tables."""

    name: str
    objects: tuple
    morphisms: dict  # mor -> (src, tgt)
    identity: dict  # obj -> mor
    composition: dict  # (g, f) -> g∘f
    product_of: tuple = None  # set for product categories

    def __post_init__(self):
        homs = {}
        for m, (s, t) in self.morphisms.items():
            homs.setdefault((s, t), []).append(m)
        for pair in homs:
            homs[pair].sort(key=idkey)
        object.__setattr__(self, "_homs", homs)

    def src(self, m):
        return self.morphisms[m][0]

    def tgt(self, m):
        return self.morphisms[m][1]

    def compose(self, g, f):
        return self.composition[(g, f)]

    def hom(self, x, y):
        return self._homs.get((x, y), [])

    def is_identity(self, m):
        s, t = self.morphisms[m]
        return s == t and self.identity.get(s) == m

    def __repr__(self):
        return (f"FinCat({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


def same_category(a: FinCat, b: FinCat) -> bool:
    """Structural sameness (object identity short-circuits)."""
    if a is b:
        return True
    return (tuple(a.objects) == tuple(b.objects)
            and a.morphisms == b.morphisms
            and a.identity == b.identity
            and a.composition == b.composition)


def validate_category(c: FinCat) -> ValidationReport:
    report = ValidationReport(f"category {c.name}")
    objs = set(c.objects)
    for m, (s, t) in c.morphisms.items():
        if s not in objs or t not in objs:
            report.add("morphism-boundary", (m,), f"src/tgt ({s},{t}) not objects")
    for x in c.objects:
        m = c.identity.get(x)
        if m is None or m not in c.morphisms:
            report.add("identity-missing", (x,))
        elif c.morphisms[m] != (x, x):
            report.add("identity-boundary", (x, m), f"has boundary {c.morphisms[m]}")
    for x in c.identity:
        if x not in objs:
            report.add("identity-domain", (x,), "identity assigned to a non-object")
    # composition defined exactly on composable pairs
    for g in c.morphisms:
        for f in c.morphisms:
            composable = c.tgt(f) == c.src(g)
            present = (g, f) in c.composition
            if composable and not present:
                report.add("composition-missing", (g, f))
            elif not composable and present:
                report.add("composition-spurious", (g, f))
    for (g, f), h in c.composition.items():
        if g not in c.morphisms or f not in c.morphisms or h not in c.morphisms:
            report.add("composition-unresolved", (g, f, h))
            continue
        if c.tgt(f) == c.src(g) and c.morphisms[h] != (c.src(f), c.tgt(g)):
            report.add("composition-boundary", (g, f, h))
    if not report.ok:
        return report
    for f in c.morphisms:
        s, t = c.morphisms[f]
        if c.compose(f, c.identity[s]) != f:
            report.add("unit-law", (f, c.identity[s]), "f∘id ≠ f")
        if c.compose(c.identity[t], f) != f:
            report.add("unit-law", (c.identity[t], f), "id∘f ≠ f")
    for h in c.morphisms:
        for g in c.morphisms:
            if c.tgt(g) != c.src(h):
                continue
            hg = c.compose(h, g)
            for f in c.morphisms:
                if c.tgt(f) != c.src(g):
                    continue
                if c.compose(hg, f) != c.compose(h, c.compose(g, f)):
                    report.add("associativity", (h, g, f))
    return report


def product_category(c: FinCat, d: FinCat) -> FinCat:
    objects = tuple((x, y) for x in c.objects for y in d.objects)
    morphisms = {}
    for m, (s, t) in c.morphisms.items():
        for n, (s2, t2) in d.morphisms.items():
            morphisms[(m, n)] = ((s, s2), (t, t2))
    identity = {(x, y): (c.identity[x], d.identity[y])
                for x in c.objects for y in d.objects}
    composition = {}
    for (g, f), gf in c.composition.items():
        for (g2, f2), gf2 in d.composition.items():
            composition[((g, g2), (f, f2))] = (gf, gf2)
    return FinCat(f"{c.name}x{d.name}", objects, morphisms, identity,
                  composition, product_of=(c, d))


# ---------------------------------------------------------------------------
# functors and natural transformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinCat
    target: FinCat
    on_objects: dict
    on_morphisms: dict

    def ob(self, x):
        return self.on_objects[x]

    def mor(self, m):
        return self.on_morphisms[m]


def identity_functor(c: FinCat) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects},
                      {m: m for m in c.morphisms})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    if not same_category(f.target, g.source):
        raise ValueError("functor boundary mismatch")
    return FinFunctor(f.source, g.target,
                      {x: g.ob(f.ob(x)) for x in f.source.objects},
                      {m: g.mor(f.mor(m)) for m in f.source.morphisms})


def functor_tables_equal(f: FinFunctor, g: FinFunctor) -> bool:
    return f.on_objects == g.on_objects and f.on_morphisms == g.on_morphisms


def validate_functor(fun: FinFunctor) -> ValidationReport:
    a, b = fun.source, fun.target
    report = ValidationReport(f"functor {a.name} -> {b.name}")
    for x in a.objects:
        if fun.on_objects.get(x) not in set(b.objects):
            report.add("object-map", (x,), "missing or unresolved image")
    for m, (s, t) in a.morphisms.items():
        img = fun.on_morphisms.get(m)
        if img is None or img not in b.morphisms:
            report.add("morphism-map", (m,), "missing or unresolved image")
            continue
        if b.morphisms[img] != (fun.on_objects.get(s), fun.on_objects.get(t)):
            report.add("boundary-preservation", (m, img))
    if not report.ok:
        return report
    for x in a.objects:
        if fun.mor(a.identity[x]) != b.identity[fun.ob(x)]:
            report.add("identity-preservation", (x,))
    for (g, f), gf in a.composition.items():
        if b.compose(fun.mor(g), fun.mor(f)) != fun.mor(gf):
            report.add("composition-preservation", (g, f))
    return report


def is_functor_iso(fun: FinFunctor) -> bool:
    """Bijective on objects and morphisms (an isomorphism of categories)."""
    return (len(set(fun.on_objects.values())) == len(fun.source.objects)
            == len(fun.target.objects)
            and len(set(fun.on_morphisms.values())) == len(fun.source.morphisms)
            == len(fun.target.morphisms))


def invert_functor_iso(fun: FinFunctor) -> FinFunctor:
    if not is_functor_iso(fun):
        raise ValueError("functor is not an isomorphism")
    return FinFunctor(fun.target, fun.source,
                      {v: k for k, v in fun.on_objects.items()},
                      {v: k for k, v in fun.on_morphisms.items()})


@dataclass(frozen=True, eq=False)
class NatTrans:
    source: FinFunctor
    target: FinFunctor
    components: dict  # obj of source cat -> mor of target cat

    def at(self, x):
        return self.components[x]


def validate_nat_trans(a: NatTrans) -> ValidationReport:
    f, g = a.source, a.target
    report = ValidationReport("natural transformation")
    if not (same_category(f.source, g.source) and same_category(f.target, g.target)):
        report.add("parallel-functors", ())
        return report
    cat, dat = f.source, f.target
    for x in cat.objects:
        m = a.components.get(x)
        if m is None or m not in dat.morphisms:
            report.add("component-missing", (x,))
        elif dat.morphisms[m] != (f.ob(x), g.ob(x)):
            report.add("component-boundary", (x, m))
    if not report.ok:
        return report
    for m, (x, y) in cat.morphisms.items():
        if dat.compose(g.mor(m), a.at(x)) != dat.compose(a.at(y), f.mor(m)):
            report.add("naturality", (m,))
    return report


def enumerate_functors(a: FinCat, b: FinCat, budget=10**6, _spent=None):
    """All functors a -> b, by backtracking over non-identity morphisms."""
    spent = _spent if _spent is not None else [0]
    nonid = [m for m in sorted(a.morphisms, key=idkey) if not a.is_identity(m)]
    pairs = [(g, f) for (g, f) in a.composition
             if not a.is_identity(g) and not a.is_identity(f)]
    results = []
    objs = sorted(a.objects, key=idkey)
    bobjs = sorted(b.objects, key=idkey)

    def assign_mors(ob_map, idx, mor_map):
        spent[0] += 1
        if spent[0] > budget:
            raise BudgetExceeded(f"functor enumeration exceeded budget {budget}")
        if idx == len(nonid):
            for (g, f) in pairs:
                if b.compose(mor_map[g], mor_map[f]) != mor_map[a.compose(g, f)]:
                    return
            full = dict(mor_map)
            for x in objs:
                full[a.identity[x]] = b.identity[ob_map[x]]
            results.append(FinFunctor(a, b, dict(ob_map), full))
            return
        m = nonid[idx]
        s, t = a.morphisms[m]
        for img in b.hom(ob_map[s], ob_map[t]):
            mor_map[m] = img
            ok = True
            for (g, f) in pairs:
                gf = a.compose(g, f)
                if g in mor_map and f in mor_map and gf in mor_map:
                    gi = mor_map[g] if not a.is_identity(g) else b.identity[ob_map[a.src(g)]]
                    fi = mor_map[f] if not a.is_identity(f) else b.identity[ob_map[a.src(f)]]
                    if b.compose(gi, fi) != mor_map[gf]:
                        ok = False
                        break
            if ok:
                assign_mors(ob_map, idx + 1, mor_map)
            del mor_map[m]

    def assign_objs(idx, ob_map):
        if idx == len(objs):
            assign_mors(ob_map, 0, {})
            return
        for y in bobjs:
            ob_map[objs[idx]] = y
            assign_objs(idx + 1, ob_map)
        if objs[idx] in ob_map:
            del ob_map[objs[idx]]

    if not objs:
        return [FinFunctor(a, b, {}, {})]
    assign_objs(0, {})
    return results


def enumerate_nat_trans(f: FinFunctor, g: FinFunctor):
    """All natural transformations f => g (same boundary categories)."""
    cat, dat = f.source, f.target
    objs = sorted(cat.objects, key=idkey)
    out = []

    def rec(idx, comp):
        if idx == len(objs):
            cand = NatTrans(f, g, dict(comp))
            if validate_nat_trans(cand).ok:
                out.append(cand)
            return
        x = objs[idx]
        for m in dat.hom(f.ob(x), g.ob(x)):
            comp[x] = m
            rec(idx + 1, comp)
        comp.pop(objs[idx], None)

    rec(0, {})
    return out


# ---------------------------------------------------------------------------
# profunctors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompositeInfo:
    first: "Profunctor"
    second: "Profunctor"
    class_of: dict = field(compare=False)  # (x, x'') -> {member triple -> class}


@dataclass(frozen=True, eq=False)
class Profunctor:
    """A finite set-valued table with two-sided action.

    ``elements[(x, x')]`` is the value at ``x`` in the source and ``x'`` in
    the target; ``action[(f, f', e)]`` sends ``e ∈ U(tgt f, src f')`` to an
    element of ``U(src f, tgt f')``.  Element IDs are globally unique across
    components.
    """

    name: str
    source: FinCat
    target: FinCat
    elements: dict  # (x, x') -> frozenset
    action: dict  # (f, f', e) -> e'
    identity_of: FinCat = None
    composite_of: CompositeInfo = None

    def at(self, x, xp):
        return self.elements[(x, xp)]

    def act(self, f, fp, e):
        return self.action[(f, fp, e)]

    def component_of(self, e):
        for pair, els in self.elements.items():
            if e in els:
                return pair
        raise KeyError(e)

    def total_elements(self):
        return sum(len(v) for v in self.elements.values())


_IDENTITY_PROFS = WeakKeyDictionary()


def identity_profunctor(c: FinCat) -> Profunctor:
    """The hom-table profunctor; a cached singleton per category."""
    cached = _IDENTITY_PROFS.get(c)
    if cached is not None:
        return cached
    elements = {(x, y): frozenset(c.hom(x, y))
                for x in c.objects for y in c.objects}
    action = {}
    for f, (x, y) in c.morphisms.items():
        for fp, (xp, yp) in c.morphisms.items():
            for e in c.hom(y, xp):
                action[(f, fp, e)] = c.compose(fp, c.compose(e, f))
    prof = Profunctor(f"hom({c.name})", c, c, elements, action, identity_of=c)
    _IDENTITY_PROFS[c] = prof
    return prof


def make_profunctor(name, source, target, elements, act):
    """Materialize the dense two-sided action table from a callable."""
    elements = {(x, y): frozenset(elements.get((x, y), ()))
                for x in source.objects for y in target.objects}
    action = {}
    for f, (x0, x1) in source.morphisms.items():
        for fp, (y0, y1) in target.morphisms.items():
            for e in elements[(x1, y0)]:
                action[(f, fp, e)] = act(f, fp, e)
    return Profunctor(name, source, target, elements, action)


def validate_profunctor(u: Profunctor) -> ValidationReport:
    report = ValidationReport(f"profunctor {u.name}")
    c, d = u.source, u.target
    pairs = {(x, y) for x in c.objects for y in d.objects}
    if set(u.elements) != pairs:
        report.add("component-domain", (), "element table keys != object pairs")
        return report
    seen = {}
    for pair in u.elements:
        for e in u.elements[pair]:
            if e in seen:
                report.add("element-uniqueness", (e,),
                           f"appears at {seen[e]} and {pair}")
            seen[e] = pair
    expected = set()
    for f, (x0, x1) in c.morphisms.items():
        for fp, (y0, y1) in d.morphisms.items():
            for e in u.elements[(x1, y0)]:
                expected.add((f, fp, e))
    if set(u.action) != expected:
        missing = expected - set(u.action)
        spurious = set(u.action) - expected
        for k in sorted(missing, key=idkey)[:5]:
            report.add("action-missing", k)
        for k in sorted(spurious, key=idkey)[:5]:
            report.add("action-spurious", k)
        if len(missing) + len(spurious) > 10:
            report.add("action-domain", (), f"{len(missing)} missing, "
                       f"{len(spurious)} spurious entries")
        return report
    for (f, fp, e), img in u.action.items():
        x0 = c.src(f)
        y1 = d.tgt(fp)
        if img not in u.elements[(x0, y1)]:
            report.add("action-boundary", (f, fp, e, img))
    if not report.ok:
        return report
    for (x, y), els in u.elements.items():
        for e in els:
            if u.act(c.identity[x], d.identity[y], e) != e:
                report.add("identity-action", (x, y, e))
    # one-sided composition laws plus commutation of the two actions
    for (f, fp, e) in u.action:
        x1 = c.tgt(f)
        y0 = d.src(fp)
        one = u.act(f, d.identity[y0], e)
        two = u.act(c.identity[c.src(f)], fp, one)
        if two != u.act(f, fp, e):
            report.add("action-commutation", (f, fp, e))
    for (f2, f1), f21 in c.composition.items():
        x1 = c.tgt(f2)
        for y in d.objects:
            for e in u.elements[(x1, y)]:
                lhs = u.act(f21, d.identity[y], e)
                rhs = u.act(f1, d.identity[y], u.act(f2, d.identity[y], e))
                if lhs != rhs:
                    report.add("left-action-composition", (f2, f1, e))
    for (g2, g1), g21 in d.composition.items():
        y0 = d.src(g1)
        for x in c.objects:
            for e in u.elements[(x, y0)]:
                lhs = u.act(c.identity[x], g21, e)
                rhs = u.act(c.identity[x], g2, u.act(c.identity[x], g1, e))
                if lhs != rhs:
                    report.add("right-action-composition", (g2, g1, e))
    return report


def profunctor_tables_equal(u: Profunctor, v: Profunctor) -> bool:
    return u.elements == v.elements and u.action == v.action


def componentwise_bijective(u: Profunctor, v: Profunctor) -> bool:
    if set(u.elements) != set(v.elements):
        return False
    return all(len(u.elements[k]) == len(v.elements[k]) for k in u.elements)


# ---------------------------------------------------------------------------
# coends and profunctor composition
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoendResult:
    classes: tuple  # class IDs, canonically the chosen representatives
    project: dict  # (x, element) -> class ID
    section: dict  # class ID -> (x, element)


def coend(c: FinCat, u: Profunctor) -> CoendResult:
    """Connected components of the diagonal of an endo-profunctor on c."""
    if not (same_category(u.source, c) and same_category(u.target, c)):
        raise ValueError("coend requires an endo-profunctor on the given category")
    diag = [(x, e) for x in c.objects for e in sorted(u.at(x, x), key=idkey)]
    uf = UnionFind(diag)
    for f, (x, xp) in c.morphisms.items():
        if c.is_identity(f):
            continue
        for w in u.at(xp, x):
            left = (x, u.act(f, c.identity[x], w))
            right = (xp, u.act(c.identity[xp], f, w))
            uf.union(left, right)
    project, section = {}, {}
    for members in uf.classes().values():
        rep = min(members, key=idkey)
        section[rep] = rep
        for m in members:
            project[m] = rep
    classes = tuple(sorted(section, key=idkey))
    return CoendResult(classes, project, section)


def compose_profunctors(u: Profunctor, v: Profunctor) -> Profunctor:
    """The composite of ``u: C -|-> C'`` followed by ``v: C' -|-> C''``.

    Identity profunctors absorb strictly: if either factor is the chosen
    identity object, the other factor is returned verbatim.
    """
    if not same_category(u.target, v.source):
        raise ValueError("profunctor boundary mismatch")
    if u.identity_of is not None:
        return v
    if v.identity_of is not None:
        return u
    c, mid, cpp = u.source, u.target, v.target
    class_of = {}
    elements = {}
    for x in c.objects:
        for z in cpp.objects:
            members = []
            for m in mid.objects:
                for s in sorted(v.at(m, z), key=idkey):
                    for t in sorted(u.at(x, m), key=idkey):
                        members.append((m, s, t))
            uf = UnionFind(members)
            for f, (a, b) in mid.morphisms.items():
                if mid.is_identity(f):
                    continue
                for s in v.at(b, z):
                    for t in u.at(x, a):
                        left = (a, v.act(f, cpp.identity[z], s), t)
                        right = (b, s, u.act(c.identity[x], f, t))
                        uf.union(left, right)
            table = {}
            for group in uf.classes().values():
                rep = min(group, key=idkey)
                for member in group:
                    table[member] = rep
            class_of[(x, z)] = table
            elements[(x, z)] = frozenset(set(table.values()))
    action = {}
    for f, (x0, x1) in c.morphisms.items():
        for fpp, (z0, z1) in cpp.morphisms.items():
            for e in elements[(x1, z0)]:
                m, s, t = e
                s2 = v.act(mid.identity[m], fpp, s)
                t2 = u.act(f, mid.identity[m], t)
                action[(f, fpp, e)] = class_of[(x0, z1)][(m, s2, t2)]
    info = CompositeInfo(u, v, class_of)
    return Profunctor(f"({v.name})*({u.name})", c, cpp, elements, action,
                      composite_of=info)


def composite_class_of(u, v, comp, x, z, mid_obj, s, t):
    """The element of comp = v∙u named by the member triple (mid_obj, s, t)."""
    if u.identity_of is not None:  # comp is v; t is a morphism of u's category
        return v.act(t, v.target.identity[z], s)
    if v.identity_of is not None:  # comp is u; s is a morphism of v's category
        return u.act(u.source.identity[x], s, t)
    return comp.composite_of.class_of[(x, z)][(mid_obj, s, t)]


def coend_member(u, v, comp, x, z, e):
    """Express element e of comp = v∙u as a member triple (mid, s, t)."""
    if u.identity_of is not None:
        return (x, e, u.source.identity[x])
    if v.identity_of is not None:
        return (z, v.target.identity[z], e)
    return e  # class IDs of generic composites are their representatives


def associator(u, v, w):
    """Canonical bijection (w∙v)∙u -> w∙(v∙u), componentwise.

    Returns None when some factor is an identity (both bracketings are then
    the same object and the comparison is the identity).  Otherwise returns
    ``{(x, x'''): {left class -> right class}}`` computed through the single
    triple quotient.
    """
    if (u.identity_of is not None or v.identity_of is not None
            or w.identity_of is not None):
        return None
    cuv = compose_profunctors(u, v)
    cvw = compose_profunctors(v, w)
    left = compose_profunctors(u, cvw)  # (w∙v)∙u
    right = compose_profunctors(cuv, w)  # w∙(v∙u)
    c, m1, m2, c3 = u.source, u.target, v.target, w.target
    out = {}
    for x in c.objects:
        for z in c3.objects:
            triples = []
            for a1 in m1.objects:
                for a2 in m2.objects:
                    for cc in w.at(a2, z):
                        for bb in v.at(a1, a2):
                            for aa in u.at(x, a1):
                                triples.append((a1, a2, (cc, bb, aa)))
            uf = UnionFind(triples)
            for f, (p, q) in m1.morphisms.items():
                if m1.is_identity(f):
                    continue
                for a2 in m2.objects:
                    for cc in w.at(a2, z):
                        for bb in v.at(q, a2):
                            for aa in u.at(x, p):
                                uf.union(
                                    (p, a2, (cc, v.act(f, m2.identity[a2], bb), aa)),
                                    (q, a2, (cc, bb, u.act(c.identity[x], f, aa))))
            for g, (p, q) in m2.morphisms.items():
                if m2.is_identity(g):
                    continue
                for a1 in m1.objects:
                    for cc in w.at(q, z):
                        for bb in v.at(a1, p):
                            for aa in u.at(x, a1):
                                uf.union(
                                    (a1, p, (w.act(g, c3.identity[z], cc), bb, aa)),
                                    (a1, q, (cc, v.act(m1.identity[a1], g, bb), aa)))
            left_root = {}
            for e in left.elements[(x, z)]:
                a1, s, aa = e  # s is a class of cvw
                a2, cc, bb = s
                left_root[e] = uf.find((a1, a2, (cc, bb, aa)))
            right_of_root = {}
            for e in right.elements[(x, z)]:
                a2, cc, p = e  # p is a class of cuv
                a1, bb, aa = p
                root = uf.find((a1, a2, (cc, bb, aa)))
                if root in right_of_root and right_of_root[root] != e:
                    raise AssertionError("associator is not a bijection")
                right_of_root[root] = e
            out[(x, z)] = {e: right_of_root[r] for e, r in left_root.items()}
    return out


# ---------------------------------------------------------------------------
# profunctor morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProfMorphism:
    """A natural family U(x,x') -> V(Fx, F'x') over functors F, F'."""

    name: str
    source: Profunctor
    target: Profunctor
    left: FinFunctor  # source.source -> target.source
    right: FinFunctor  # source.target -> target.target
    mapping: dict  # (x, x') -> {element -> element}

    def map_at(self, x, xp, e):
        return self.mapping[(x, xp)][e]


def identity_prof_morphism(u: Profunctor) -> ProfMorphism:
    mapping = {pair: {e: e for e in els} for pair, els in u.elements.items()}
    return ProfMorphism(f"id({u.name})", u, u, identity_functor(u.source),
                        identity_functor(u.target), mapping)


def make_prof_morphism(name, source, target, left, right, fn) -> ProfMorphism:
    mapping = {pair: {e: fn(pair[0], pair[1], e) for e in els}
               for pair, els in source.elements.items()}
    return ProfMorphism(name, source, target, left, right, mapping)


def validate_prof_morphism(pm: ProfMorphism) -> ValidationReport:
    report = ValidationReport(f"profunctor morphism {pm.name}")
    u, v = pm.source, pm.target
    if not (same_category(pm.left.source, u.source)
            and same_category(pm.left.target, v.source)
            and same_category(pm.right.source, u.target)
            and same_category(pm.right.target, v.target)):
        report.add("boundary-functors", ())
        return report
    for pair, els in u.elements.items():
        comp = pm.mapping.get(pair)
        if comp is None or set(comp) != set(els):
            report.add("component-domain", pair)
            continue
        x, xp = pair
        tgt_pair = (pm.left.ob(x), pm.right.ob(xp))
        for e, img in comp.items():
            if img not in v.elements[tgt_pair]:
                report.add("component-boundary", (x, xp, e, img))
    if not report.ok:
        return report
    for (f, fp, e), img in u.action.items():
        x0, x1 = u.source.morphisms[f]
        y0, y1 = u.target.morphisms[fp]
        lhs = pm.map_at(x0, y1, img)
        rhs = v.act(pm.left.mor(f), pm.right.mor(fp), pm.map_at(x1, y0, e))
        if lhs != rhs:
            report.add("naturality", (f, fp, e))
    return report


def prof_morphism_bijective(pm: ProfMorphism) -> bool:
    for pair, comp in pm.mapping.items():
        x, xp = pair
        tgt = pm.target.elements[(pm.left.ob(x), pm.right.ob(xp))]
        if len(set(comp.values())) != len(comp) or len(comp) != len(tgt):
            return False
    return True


def compose_prof_morphisms_over(first, second, src_comp, tgt_comp) -> ProfMorphism:
    """The induced map v∙u -> v₁∙u₁ of composites from first: u=>u₁, second: v=>v₁."""
    u, v = first.source, second.source
    u1, v1 = first.target, second.target
    mid = first.right  # = functor on the middle category shared with second.left

    def fn(x, z, e):
        m, s, t = coend_member(u, v, src_comp, x, z, e)
        return composite_class_of(u1, v1, tgt_comp, first.left.ob(x),
                                  second.right.ob(z), mid.ob(m),
                                  second.map_at(m, z, s), first.map_at(x, m, t))

    return make_prof_morphism(f"({second.name})*({first.name})", src_comp,
                              tgt_comp, first.left, second.right, fn)


# ---------------------------------------------------------------------------
# two-sided discrete fibrations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwoSidedFibWitness:
    """A functor into a product category with verified unique-lift tables."""

    functor: FinFunctor  # (P,Q): E -> C x C'
    lift_p: dict  # (object e, f: x -> P e) -> morphism of E
    lift_q: dict  # (object e, f': Q e -> x') -> morphism of E

    @property
    def total(self):
        return self.functor.source

    @property
    def left_cat(self):
        return self.functor.target.product_of[0]

    @property
    def right_cat(self):
        return self.functor.target.product_of[1]

    def p(self, e):
        return self.functor.ob(e)[0]

    def q(self, e):
        return self.functor.ob(e)[1]

    def pullback(self, f, e):
        """f* e: the source of the unique P-lift of f with target e."""
        return self.total.src(self.lift_p[(e, f)])

    def pushforward(self, fp, e):
        """f'_! e: the target of the unique Q-lift of f' with source e."""
        return self.total.tgt(self.lift_q[(e, fp)])


def check_two_sided_fibration(pq: FinFunctor):
    """Witness tables on success, a report naming the first violations otherwise."""
    if pq.target.product_of is None:
        raise ValueError("two-sided fibration candidates must land in a product category")
    c, cp = pq.target.product_of
    e_cat = pq.source
    report = ValidationReport(f"two-sided fibration over {c.name}x{cp.name}")
    lift_p, lift_q = {}, {}
    for e in e_cat.objects:
        pe, qe = pq.ob(e)
        for f in c.morphisms:
            if c.tgt(f) != pe:
                continue
            cands = [m for m, (s, t) in e_cat.morphisms.items()
                     if t == e and pq.mor(m) == (f, cp.identity[qe])]
            if len(cands) == 1:
                lift_p[(e, f)] = cands[0]
            else:
                report.add("left-lift-unique", (e, f),
                           f"{len(cands)} lifts: {sorted(cands, key=idkey)}")
        for fp in cp.morphisms:
            if cp.src(fp) != qe:
                continue
            cands = [m for m, (s, t) in e_cat.morphisms.items()
                     if s == e and pq.mor(m) == (c.identity[pe], fp)]
            if len(cands) == 1:
                lift_q[(e, fp)] = cands[0]
            else:
                report.add("right-lift-unique", (e, fp),
                           f"{len(cands)} lifts: {sorted(cands, key=idkey)}")
    if not report.ok:
        return report
    for g, (e0, e1) in e_cat.morphisms.items():
        f, fp = pq.mor(g)
        lp = lift_p[(e1, f)]
        lq = lift_q[(e0, fp)]
        if e_cat.src(lp) != e_cat.tgt(lq):
            report.add("factorization-boundary", (g,))
        elif e_cat.compose(lp, lq) != g:
            report.add("factorization", (g,))
    if not report.ok:
        return report
    return TwoSidedFibWitness(pq, lift_p, lift_q)


def fib(w: TwoSidedFibWitness) -> Profunctor:
    """Fibers of a two-sided discrete fibration, with lift-induced actions."""
    c, cp = w.left_cat, w.right_cat
    elements = {}
    for x in c.objects:
        for xp in cp.objects:
            elements[(x, xp)] = frozenset(
                e for e in w.total.objects if w.functor.ob(e) == (x, xp))

    def act(f, fp, e):
        return w.pushforward(fp, w.pullback(f, e))

    return make_profunctor(f"fib({w.total.name})", c, cp, elements, act)


def arrow_category(c: FinCat) -> FinCat:
    """Morphisms of c and commutative squares between them."""
    objects = tuple(sorted(c.morphisms, key=idkey))
    morphisms = {}
    for f in objects:
        for g in objects:
            for a in c.hom(c.src(f), c.src(g)):
                for b in c.hom(c.tgt(f), c.tgt(g)):
                    if c.compose(g, a) == c.compose(b, f):
                        morphisms[(f, g, a, b)] = (f, g)
    identity = {f: (f, f, c.identity[c.src(f)], c.identity[c.tgt(f)])
                for f in objects}
    composition = {}
    for m2 in morphisms:
        for m1 in morphisms:
            if m1[1] != m2[0]:
                continue
            composition[(m2, m1)] = (m1[0], m2[1], c.compose(m2[2], m1[2]),
                                     c.compose(m2[3], m1[3]))
    return FinCat(f"{c.name}^[1]", objects, morphisms, identity, composition)


def identity_ts_fibration(c: FinCat) -> TwoSidedFibWitness:
    """(source, target): c^[1] -> c x c."""
    e_cat = arrow_category(c)
    prod = product_category(c, c)
    fun = FinFunctor(e_cat, prod,
                     {f: (c.src(f), c.tgt(f)) for f in e_cat.objects},
                     {m: (m[2], m[3]) for m in e_cat.morphisms})
    w = check_two_sided_fibration(fun)
    if isinstance(w, ValidationReport):
        raise RuntimeError(f"identity two-sided fibration failed its own check:\n{w}")
    return w


def tabulate(u: Profunctor) -> TwoSidedFibWitness:
    """The two-sided discrete fibration with u's elements as objects."""
    c, cp = u.source, u.target
    objects = tuple(sorted((e for els in u.elements.values() for e in els),
                           key=idkey))
    place = {}
    for (x, xp), els in u.elements.items():
        for e in els:
            place[e] = (x, xp)
    morphisms = {}
    for e in objects:
        x, xp = place[e]
        for eh in objects:
            y, yp = place[eh]
            for g in c.hom(x, y):
                for gp in cp.hom(xp, yp):
                    if u.act(g, cp.identity[yp], eh) == u.act(c.identity[x], gp, e):
                        morphisms[(e, eh, g, gp)] = (e, eh)
    identity = {e: (e, e, c.identity[place[e][0]], cp.identity[place[e][1]])
                for e in objects}
    composition = {}
    for m2 in morphisms:
        for m1 in morphisms:
            if m1[1] != m2[0]:
                continue
            composition[(m2, m1)] = (m1[0], m2[1], c.compose(m2[2], m1[2]),
                                     cp.compose(m2[3], m1[3]))
    total = FinCat(f"el({u.name})", objects, morphisms, identity, composition)
    prod = product_category(c, cp)
    fun = FinFunctor(total, prod, dict(place),
                     {m: (m[2], m[3]) for m in morphisms})
    w = check_two_sided_fibration(fun)
    if isinstance(w, ValidationReport):
        raise RuntimeError(f"tabulated profunctor failed the fibration check:\n{w}")
    return w


def compose_ts_fibrations(w1: TwoSidedFibWitness, w2: TwoSidedFibWitness):
    """Quotiented pullback of totals; fib of the result matches the profunctor composite."""
    if not same_category(w1.right_cat, w2.left_cat):
        raise ValueError("two-sided fibration boundary mismatch")
    c, mid, cpp = w1.left_cat, w1.right_cat, w2.right_cat
    e1, e2 = w1.total, w2.total
    pairs = [(e, ep) for e in e1.objects for ep in e2.objects
             if w1.q(e) == w2.p(ep)]
    uf = UnionFind(pairs)
    for e in e1.objects:
        for ep in e2.objects:
            for g in mid.hom(w1.q(e), w2.p(ep)):
                uf.union((e, w2.pullback(g, ep)), (w1.pushforward(g, e), ep))
    class_of = {}
    reps = {}
    for group in uf.classes().values():
        rep = min(group, key=idkey)
        reps[rep] = group
        for member in group:
            class_of[member] = rep
    objects = tuple(sorted(reps, key=idkey))

    def base_of(cls):
        e, ep = cls
        return (w1.p(e), w2.q(ep))

    def pull(f, cls):  # f* on classes, via a representative
        e, ep = cls
        return class_of[(w1.total.src(w1.lift_p[(e, f)]), ep)]

    def push(fpp, cls):
        e, ep = cls
        return class_of[(e, w2.total.tgt(w2.lift_q[(ep, fpp)]))]

    morphisms = {}
    for a in objects:
        xa, za = base_of(a)
        for b in objects:
            xb, zb = base_of(b)
            for f in c.hom(xa, xb):
                for fpp in cpp.hom(za, zb):
                    if pull(f, b) == push(fpp, a):
                        morphisms[(a, b, f, fpp)] = (a, b)
    identity = {a: (a, a, c.identity[base_of(a)[0]], cpp.identity[base_of(a)[1]])
                for a in objects}
    composition = {}
    for m2 in morphisms:
        for m1 in morphisms:
            if m1[1] != m2[0]:
                continue
            composition[(m2, m1)] = (m1[0], m2[1], c.compose(m2[2], m1[2]),
                                     cpp.compose(m2[3], m1[3]))
    total = FinCat(f"({e1.name})o({e2.name})", objects, morphisms, identity,
                   composition)
    prod = product_category(c, cpp)
    fun = FinFunctor(total, prod, {a: base_of(a) for a in objects},
                     {m: (m[2], m[3]) for m in morphisms})
    w = check_two_sided_fibration(fun)
    if isinstance(w, ValidationReport):
        raise RuntimeError(f"composite two-sided fibration failed its check:\n{w}")
    return w


def fib_composition_comparison(w1, w2, composite=None) -> ProfMorphism:
    """The canonical map fib(w2∙w1) -> fib(w2)∙fib(w1) as a ProfMorphism."""
    if composite is None:
        composite = compose_ts_fibrations(w1, w2)
    left = fib(composite)
    f1, f2 = fib(w1), fib(w2)
    right = compose_profunctors(f1, f2)

    def fn(x, z, cls):
        e, ep = cls
        return composite_class_of(f1, f2, right, x, z, w1.q(e), ep, e)

    return make_prof_morphism("fib-composition-comparison", left, right,
                              identity_functor(left.source),
                              identity_functor(left.target), fn)
