"""Finite strict double categories and their derived structures.

Cells live in four sorts: objects, horizontal morphisms (hmors), vertical
morphisms (vmors), and squares.  A square with boundary ``(top, bottom,
left, right)`` has ``top: x→y``, ``left: x→x'`` (vertical), ``bottom:
x'→y'``, ``right: y→y'`` (vertical).  Composition keys follow the fincat
convention: ``hcomp_h[(g, f)] = g∘f``; ``vcomp_sq[(b, a)]`` is ``b•a`` with
``a`` on top.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    FinCat,
    FinFunctor,
    Profunctor,
    ProfMorphism,
    compose_profunctors,
    identity_functor,

    make_prof_morphism,
    make_profunctor,
)
from .util import ValidationReport, idkey


def h1(x):
    return ("h1", x)


def v1(x):
    return ("v1", x)


def hsq(u):
    return ("hsq", u)


def vsq(f):
    return ("vsq", f)


def esq(x):
    return ("esq", x)


@dataclass(frozen=True, eq=False)
class DoubleCat:
    name: str
    objects: tuple
    hmors: dict  # id -> (src, tgt)
    vmors: dict  # id -> (src, tgt)
    squares: dict  # id -> (top, bottom, left, right)
    hid: dict  # object -> hmor
    vid: dict  # object -> vmor
    hid_sq: dict  # vmor -> square 1_u
    vid_sq: dict  # hmor -> square e_f
    hcomp_h: dict  # (g, f) -> g∘f
    vcomp_v: dict  # (u2, u1) -> u2•u1
    hcomp_sq: dict  # (b, a) -> b∘a
    vcomp_sq: dict  # (b, a) -> b•a

    def __post_init__(self):
        by_boundary = {}
        for s, bnd in self.squares.items():
            by_boundary.setdefault(bnd, []).append(s)
        object.__setattr__(self, "_sq_by_boundary", by_boundary)

    def hsrc(self, f):
        return self.hmors[f][0]

    def htgt(self, f):
        return self.hmors[f][1]

    def vsrc(self, u):
        return self.vmors[u][0]

    def vtgt(self, u):
        return self.vmors[u][1]

    def top(self, s):
        return self.squares[s][0]

    def bottom(self, s):
        return self.squares[s][1]

    def left(self, s):
        return self.squares[s][2]

    def right(self, s):
        return self.squares[s][3]

    def squares_with(self, top=None, bottom=None, left=None, right=None):
        out = []
        for s, (t, b, l, r) in self.squares.items():
            if ((top is None or t == top) and (bottom is None or b == bottom)
                    and (left is None or l == left)
                    and (right is None or r == right)):
                out.append(s)
        return sorted(out, key=idkey)

    def square_by_boundary(self, top, bottom, left, right):
        return self._sq_by_boundary.get((top, bottom, left, right), [])

    def hmors_between(self, x, y):
        return sorted((f for f, (s, t) in self.hmors.items()
                       if s == x and t == y), key=idkey)

    def __repr__(self):
        return (f"DoubleCat({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.hmors)} hmors, {len(self.vmors)} vmors, "
                f"{len(self.squares)} squares)")


def double_cat_tables_equal(a: DoubleCat, b: DoubleCat) -> bool:
    return (tuple(a.objects) == tuple(b.objects) and a.hmors == b.hmors
            and a.vmors == b.vmors and a.squares == b.squares
            and a.hid == b.hid and a.vid == b.vid and a.hid_sq == b.hid_sq
            and a.vid_sq == b.vid_sq and a.hcomp_h == b.hcomp_h
            and a.vcomp_v == b.vcomp_v and a.hcomp_sq == b.hcomp_sq
            and a.vcomp_sq == b.vcomp_sq)


def build_double_category(name, objects, hmors=None, vmors=None, squares=None,
                          hcomp=None, vcomp=None, hcomp_sq=None, vcomp_sq=None):
    """Assemble a double category from non-identity cells and composites.

    Identity cells are generated (IDs ("h1",x), ("v1",x), ("hsq",u),
    ("vsq",f), ("esq",x)), unit composites and identity-functoriality
    composites are filled in, and any remaining composable pair must be
    covered by the explicit tables.
    """
    objects = tuple(objects)
    hmors = dict(hmors or {})
    vmors = dict(vmors or {})
    squares = dict(squares or {})
    for x in objects:
        if h1(x) in hmors or v1(x) in vmors:
            raise ValueError(f"generated identity ID collides at {x}")
        hmors[h1(x)] = (x, x)
        vmors[v1(x)] = (x, x)
    hid = {x: h1(x) for x in objects}
    vid = {x: v1(x) for x in objects}
    hid_sq, vid_sq = {}, {}
    for x in objects:
        squares[esq(x)] = (h1(x), h1(x), v1(x), v1(x))
        hid_sq[v1(x)] = esq(x)
        vid_sq[h1(x)] = esq(x)
    for u, (x, y) in vmors.items():
        if u in hid_sq:
            continue
        squares[hsq(u)] = (h1(x), h1(y), u, u)
        hid_sq[u] = hsq(u)
    for f, (x, y) in hmors.items():
        if f in vid_sq:
            continue
        squares[vsq(f)] = (f, f, v1(x), v1(y))
        vid_sq[f] = vsq(f)

    def fill(table, key, value, what):
        if key in table and table[key] != value:
            raise ValueError(f"conflicting {what} entry at {key}")
        table[key] = value

    hcomp = dict(hcomp or {})
    vcomp = dict(vcomp or {})
    hcomp_sq = dict(hcomp_sq or {})
    vcomp_sq = dict(vcomp_sq or {})
    for f, (x, y) in hmors.items():
        fill(hcomp, (f, hid[x]), f, "hcomp")
        fill(hcomp, (hid[y], f), f, "hcomp")
    for u, (x, y) in vmors.items():
        fill(vcomp, (u, vid[x]), u, "vcomp")
        fill(vcomp, (vid[y], u), u, "vcomp")
    for s, (t, b, l, r) in squares.items():
        fill(hcomp_sq, (s, hid_sq[l]), s, "hcomp_sq")
        fill(hcomp_sq, (hid_sq[r], s), s, "hcomp_sq")
        fill(vcomp_sq, (s, vid_sq[t]), s, "vcomp_sq")
        fill(vcomp_sq, (vid_sq[b], s), s, "vcomp_sq")
    for (g, f), gf in list(hcomp.items()):
        fill(hcomp_sq, (vid_sq[g], vid_sq[f]), vid_sq[gf], "hcomp_sq")
    for (u2, u1), u21 in list(vcomp.items()):
        fill(vcomp_sq, (hid_sq[u2], hid_sq[u1]), hid_sq[u21], "vcomp_sq")

    d = DoubleCat(name, objects, hmors, vmors, squares, hid, vid, hid_sq,
                  vid_sq, hcomp, vcomp, hcomp_sq, vcomp_sq)
    missing = _missing_composites(d)
    if missing:
        raise ValueError(f"composition tables incomplete: {missing[:5]}")
    return d


def _missing_composites(d: DoubleCat):
    missing = []
    for g in d.hmors:
        for f in d.hmors:
            if d.htgt(f) == d.hsrc(g) and (g, f) not in d.hcomp_h:
                missing.append(("hcomp_h", g, f))
    for u2 in d.vmors:
        for u1 in d.vmors:
            if d.vtgt(u1) == d.vsrc(u2) and (u2, u1) not in d.vcomp_v:
                missing.append(("vcomp_v", u2, u1))
    for b in d.squares:
        for a in d.squares:
            if d.right(a) == d.left(b) and (b, a) not in d.hcomp_sq:
                missing.append(("hcomp_sq", b, a))
            if d.bottom(a) == d.top(b) and (b, a) not in d.vcomp_sq:
                missing.append(("vcomp_sq", b, a))
    return missing


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate_double_category(d: DoubleCat) -> ValidationReport:
    report = ValidationReport(f"double category {d.name}")
    objs = set(d.objects)
    for f, (s, t) in d.hmors.items():
        if s not in objs or t not in objs:
            report.add("hmor-boundary", (f,))
    for u, (s, t) in d.vmors.items():
        if s not in objs or t not in objs:
            report.add("vmor-boundary", (u,))
    for s, (t, b, l, r) in d.squares.items():
        if t not in d.hmors or b not in d.hmors or l not in d.vmors or r not in d.vmors:
            report.add("square-unresolved", (s,))
            continue
        x, y = d.hmors[t]
        xp, yp = d.hmors[b]
        if d.vmors[l] != (x, xp) or d.vmors[r] != (y, yp):
            report.add("square-boundary", (s,))
    if not report.ok:
        return report
    for x in d.objects:
        f = d.hid.get(x)
        if f is None or d.hmors.get(f) != (x, x):
            report.add("hid", (x,))
        u = d.vid.get(x)
        if u is None or d.vmors.get(u) != (x, x):
            report.add("vid", (x,))
    for u, (x, y) in d.vmors.items():
        s = d.hid_sq.get(u)
        if s is None or d.squares.get(s) != (d.hid[x], d.hid[y], u, u):
            report.add("hid-square", (u,))
    for f, (x, y) in d.hmors.items():
        s = d.vid_sq.get(f)
        if s is None or d.squares.get(s) != (f, f, d.vid[x], d.vid[y]):
            report.add("vid-square", (f,))
    for x in d.objects:
        if d.hid_sq.get(d.vid[x]) != d.vid_sq.get(d.hid[x]):
            report.add("identity-square-overlap", (x,),
                       "e_{1_x} and 1_{e_x} stored differently")
    if not report.ok:
        return report

    for missing in _missing_composites(d):
        report.add(missing[0] + "-missing", missing[1:])
    for (g, f), gf in d.hcomp_h.items():
        if g not in d.hmors or f not in d.hmors or gf not in d.hmors:
            report.add("hcomp_h-unresolved", (g, f))
        elif d.htgt(f) != d.hsrc(g):
            report.add("hcomp_h-spurious", (g, f))
        elif d.hmors[gf] != (d.hsrc(f), d.htgt(g)):
            report.add("hcomp_h-boundary", (g, f, gf))
    for (u2, u1), u in d.vcomp_v.items():
        if u2 not in d.vmors or u1 not in d.vmors or u not in d.vmors:
            report.add("vcomp_v-unresolved", (u2, u1))
        elif d.vtgt(u1) != d.vsrc(u2):
            report.add("vcomp_v-spurious", (u2, u1))
        elif d.vmors[u] != (d.vsrc(u1), d.vtgt(u2)):
            report.add("vcomp_v-boundary", (u2, u1, u))
    for (b, a), s in d.hcomp_sq.items():
        if b not in d.squares or a not in d.squares or s not in d.squares:
            report.add("hcomp_sq-unresolved", (b, a))
            continue
        if d.right(a) != d.left(b):
            report.add("hcomp_sq-spurious", (b, a))
            continue
        want = (d.hcomp_h[(d.top(b), d.top(a))],
                d.hcomp_h[(d.bottom(b), d.bottom(a))], d.left(a), d.right(b))
        if d.squares[s] != want:
            report.add("hcomp_sq-boundary", (b, a, s))
    for (b, a), s in d.vcomp_sq.items():
        if b not in d.squares or a not in d.squares or s not in d.squares:
            report.add("vcomp_sq-unresolved", (b, a))
            continue
        if d.bottom(a) != d.top(b):
            report.add("vcomp_sq-spurious", (b, a))
            continue
        want = (d.top(a), d.bottom(b), d.vcomp_v[(d.left(b), d.left(a))],
                d.vcomp_v[(d.right(b), d.right(a))])
        if d.squares[s] != want:
            report.add("vcomp_sq-boundary", (b, a, s))
    if not report.ok:
        return report

    # units and associativity on all four sorts
    for f, (x, y) in d.hmors.items():
        if d.hcomp_h[(f, d.hid[x])] != f or d.hcomp_h[(d.hid[y], f)] != f:
            report.add("hcomp_h-unit", (f,))
    for u, (x, y) in d.vmors.items():
        if d.vcomp_v[(u, d.vid[x])] != u or d.vcomp_v[(d.vid[y], u)] != u:
            report.add("vcomp_v-unit", (u,))
    for s in d.squares:
        if (d.hcomp_sq[(s, d.hid_sq[d.left(s)])] != s
                or d.hcomp_sq[(d.hid_sq[d.right(s)], s)] != s):
            report.add("hcomp_sq-unit", (s,))
        if (d.vcomp_sq[(s, d.vid_sq[d.top(s)])] != s
                or d.vcomp_sq[(d.vid_sq[d.bottom(s)], s)] != s):
            report.add("vcomp_sq-unit", (s,))

    def assoc(table, items, src, tgt, law):
        for h in items:
            for g in items:
                if tgt(g) != src(h):
                    continue
                hg = table[(h, g)]
                for f in items:
                    if tgt(f) != src(g):
                        continue
                    if table[(hg, f)] != table[(h, table[(g, f)])]:
                        report.add(law, (h, g, f))

    assoc(d.hcomp_h, d.hmors, d.hsrc, d.htgt, "hcomp_h-associativity")
    assoc(d.vcomp_v, d.vmors, d.vsrc, d.vtgt, "vcomp_v-associativity")
    assoc(d.hcomp_sq, d.squares, d.left, d.right, "hcomp_sq-associativity")
    assoc(d.vcomp_sq, d.squares, d.top, d.bottom, "vcomp_sq-associativity")

    # identity functoriality
    for (g, f), gf in d.hcomp_h.items():
        if d.hcomp_sq[(d.vid_sq[g], d.vid_sq[f])] != d.vid_sq[gf]:
            report.add("vid-square-functoriality", (g, f), "e_g∘e_f ≠ e_{g∘f}")
    for (u2, u1), u in d.vcomp_v.items():
        if d.vcomp_sq[(d.hid_sq[u2], d.hid_sq[u1])] != d.hid_sq[u]:
            report.add("hid-square-functoriality", (u2, u1),
                       "1_{u'}•1_u ≠ 1_{u'•u}")

    # interchange on all 2x2 grids
    by_left = {}
    for s in d.squares:
        by_left.setdefault(d.left(s), []).append(s)
    for a in d.squares:
        for ap in d.squares:
            if d.bottom(a) != d.top(ap):
                continue
            for b in by_left.get(d.right(a), ()):
                for bp in by_left.get(d.right(ap), ()):
                    if d.bottom(b) != d.top(bp):
                        continue
                    lhs = d.vcomp_sq[(d.hcomp_sq[(bp, ap)], d.hcomp_sq[(b, a)])]
                    rhs = d.hcomp_sq[(d.vcomp_sq[(bp, b)], d.vcomp_sq[(ap, a)])]
                    if lhs != rhs:
                        report.add("interchange", (a, b, ap, bp))
    return report


# ---------------------------------------------------------------------------
# underlying categories, opposites, embeddings
# ---------------------------------------------------------------------------


def underlying(d: DoubleCat, which: str) -> FinCat:
    if which == "Ver0":
        return FinCat(f"Ver0({d.name})", d.objects, dict(d.vmors), dict(d.vid),
                      dict(d.vcomp_v))
    if which == "Hor0":
        return FinCat(f"Hor0({d.name})", d.objects, dict(d.hmors), dict(d.hid),
                      dict(d.hcomp_h))
    if which == "Ver1":
        morphisms = {s: (t, b) for s, (t, b, l, r) in d.squares.items()}
        return FinCat(f"Ver1({d.name})", tuple(sorted(d.hmors, key=idkey)),
                      morphisms, dict(d.vid_sq), dict(d.vcomp_sq))
    raise ValueError(f"unknown underlying category {which!r}")


def horizontal_opposite(d: DoubleCat) -> DoubleCat:
    hmors = {f: (t, s) for f, (s, t) in d.hmors.items()}
    squares = {s: (t, b, r, l) for s, (t, b, l, r) in d.squares.items()}
    hcomp = {(f, g): gf for (g, f), gf in d.hcomp_h.items()}
    hcomp_sq = {(a, b): s for (b, a), s in d.hcomp_sq.items()}
    return DoubleCat(f"op({d.name})", d.objects, hmors, dict(d.vmors), squares,
                     dict(d.hid), dict(d.vid), dict(d.hid_sq), dict(d.vid_sq),
                     hcomp, dict(d.vcomp_v), hcomp_sq, dict(d.vcomp_sq))


def embed(c: FinCat, direction: str) -> DoubleCat:
    """V(c) has c as its vertical category; H(c) as its horizontal one."""
    if direction not in ("vertical", "horizontal"):
        raise ValueError("direction must be 'vertical' or 'horizontal'")
    objects = tuple(c.objects)
    if direction == "vertical":
        hid = {x: h1(x) for x in objects}
        vid = dict(c.identity)
        hmors = {h1(x): (x, x) for x in objects}
        vmors = dict(c.morphisms)
        squares = {}
        hid_sq, vid_sq = {}, {}
        for u, (x, y) in c.morphisms.items():
            sid = esq(x) if c.is_identity(u) else hsq(u)
            squares[sid] = (h1(x), h1(y), u, u)
            hid_sq[u] = sid
        for x in objects:
            vid_sq[h1(x)] = esq(x)
        hcomp = {}
        for f in hmors:
            x = hmors[f][0]
            hcomp[(f, f)] = f
        vcomp = dict(c.composition)
        vcomp.update({(u, c.identity[c.src(u)]): u for u in c.morphisms})
        vcomp.update({(c.identity[c.tgt(u)], u): u for u in c.morphisms})
        hcomp_sq = {(hid_sq[u], hid_sq[u]): hid_sq[u] for u in c.morphisms}
        vcomp_sq = {}
        for (u2, u1), u in vcomp.items():
            vcomp_sq[(hid_sq[u2], hid_sq[u1])] = hid_sq[u]
        return DoubleCat(f"V({c.name})", objects, hmors, vmors, squares, hid,
                         vid, hid_sq, vid_sq, hcomp, vcomp, hcomp_sq, vcomp_sq)
    vid = {x: v1(x) for x in objects}
    vmors = {v1(x): (x, x) for x in objects}
    hmors = dict(c.morphisms)
    squares = {}
    hid_sq, vid_sq = {}, {}
    for f, (x, y) in c.morphisms.items():
        sid = esq(x) if c.is_identity(f) else vsq(f)
        squares[sid] = (f, f, v1(x), v1(y))
        vid_sq[f] = sid
    for x in objects:
        hid_sq[v1(x)] = esq(x)
    hid = dict(c.identity)
    hcomp = dict(c.composition)
    hcomp.update({(f, c.identity[c.src(f)]): f for f in c.morphisms})
    hcomp.update({(c.identity[c.tgt(f)], f): f for f in c.morphisms})
    vcomp = {(v1(x), v1(x)): v1(x) for x in objects}
    vcomp_sq = {(vid_sq[f], vid_sq[f]): vid_sq[f] for f in c.morphisms}
    hcomp_sq = {}
    for (g, f), gf in hcomp.items():
        hcomp_sq[(vid_sq[g], vid_sq[f])] = vid_sq[gf]
    return DoubleCat(f"H({c.name})", objects, hmors, vmors, squares, hid, vid,
                     hid_sq, vid_sq, hcomp, vcomp, hcomp_sq, vcomp_sq)


# ---------------------------------------------------------------------------
# hom structures
# ---------------------------------------------------------------------------


def hom_category(d: DoubleCat, x, xh) -> FinCat:
    """Horizontal morphisms x -> xh and the globular squares between them."""
    objects = tuple(d.hmors_between(x, xh))
    ex, exh = d.vid[x], d.vid[xh]
    morphisms = {}
    for s, (t, b, l, r) in d.squares.items():
        if l == ex and r == exh and t in set(objects):
            morphisms[s] = (t, b)
    identity = {g: d.vid_sq[g] for g in objects}
    composition = {}
    for b_ in morphisms:
        for a_ in morphisms:
            if morphisms[a_][1] == morphisms[b_][0]:
                composition[(b_, a_)] = d.vcomp_sq[(b_, a_)]
    return FinCat(f"{d.name}({x},{xh})", objects, morphisms, identity,
                  composition)


def hom_functor(d: DoubleCat, f, fh, source=None, target=None) -> FinFunctor:
    """Pre/post composition ℂ(f, fh): ℂ(y, xh) -> ℂ(x, yh) for f: x→y, fh: xh→yh."""
    y, x = d.htgt(f), d.hsrc(f)
    xh, yh = d.hsrc(fh), d.htgt(fh)
    src = source if source is not None else hom_category(d, y, xh)
    tgt = target if target is not None else hom_category(d, x, yh)
    on_objects = {g: d.hcomp_h[(fh, d.hcomp_h[(g, f)])] for g in src.objects}
    on_morphisms = {m: d.hcomp_sq[(d.vid_sq[fh], d.hcomp_sq[(m, d.vid_sq[f])])]
                    for m in src.morphisms}
    return FinFunctor(src, tgt, on_objects, on_morphisms)


def hom_profunctor(d: DoubleCat, u, uh, source=None, target=None) -> Profunctor:
    """Squares with left edge u and right edge uh, acted on by vertical pasting."""
    src = source if source is not None else hom_category(d, d.vsrc(u), d.vsrc(uh))
    tgt = target if target is not None else hom_category(d, d.vtgt(u), d.vtgt(uh))
    elements = {}
    for g in src.objects:
        for gp in tgt.objects:
            elements[(g, gp)] = d.square_by_boundary(g, gp, u, uh)

    def act(m, mp, e):
        return d.vcomp_sq[(mp, d.vcomp_sq[(e, m)])]

    return make_profunctor(f"{d.name}({u},{uh})", src, tgt, elements, act)


def hom_action(d: DoubleCat, a, ah, source=None, target=None, left=None,
               right=None) -> ProfMorphism:
    """ℂ(a, ah): horizontal pasting ah∘η∘a on hom profunctors.

    a has right edge u (the source profunctor's first argument) and ah has
    left edge uh; the result maps ℂ(u,uh) to ℂ(left a, right ah).
    """
    u, uh = d.right(a), d.left(ah)
    src = source if source is not None else hom_profunctor(d, u, uh)
    tgt = target if target is not None else hom_profunctor(d, d.left(a), d.right(ah))
    lf = left if left is not None else hom_functor(d, d.top(a), d.top(ah),
                                                   src.source, tgt.source)
    rf = right if right is not None else hom_functor(d, d.bottom(a), d.bottom(ah),
                                                      src.target, tgt.target)

    def fn(g, gp, e):
        return d.hcomp_sq[(ah, d.hcomp_sq[(e, a)])]

    return make_prof_morphism(f"{d.name}({a},{ah})", src, tgt, lf, rf, fn)


def hom_mu(d: DoubleCat, pair1, pair2, first=None, second=None,
           target=None) -> ProfMorphism:
    """The comparison ℂ(u',uh')∙ℂ(u,uh) => ℂ(u'•u, uh'•uh), by vertical pasting.

    pair1 = (u, uh) is the first (top) pair, pair2 = (u', uh') the second.
    """
    u, uh = pair1
    u2, uh2 = pair2
    f = first if first is not None else hom_profunctor(d, u, uh)
    s = second if second is not None else hom_profunctor(d, u2, uh2)
    tgt = target if target is not None else hom_profunctor(
        d, d.vcomp_v[(u2, u)], d.vcomp_v[(uh2, uh)])
    if f.identity_of is not None or s.identity_of is not None:
        other = s if f.identity_of is not None else f
        mapping = {pair: {e: e for e in els} for pair, els in other.elements.items()}
        return ProfMorphism(f"mu({pair1},{pair2})", other, tgt,
                            identity_functor(other.source),
                            identity_functor(other.target), mapping)
    comp = compose_profunctors(f, s)

    def fn(g, gpp, cls):
        members = [m for m, rep in
                   comp.composite_of.class_of[(g, gpp)].items() if rep == cls]
        values = {d.vcomp_sq[(beta, alpha)] for (_, beta, alpha) in members}
        if len(values) != 1:
            raise AssertionError(
                f"vertical pasting not constant on coend class {cls}")
        return values.pop()

    return make_prof_morphism(f"mu({pair1},{pair2})", comp, tgt,
                              identity_functor(comp.source),
                              identity_functor(comp.target), fn)


# ---------------------------------------------------------------------------
# double functors
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DoubleFunctor:
    source: DoubleCat
    target: DoubleCat
    on_objects: dict
    on_hmors: dict
    on_vmors: dict
    on_squares: dict

    def ob(self, x):
        return self.on_objects[x]

    def hmor(self, f):
        return self.on_hmors[f]

    def vmor(self, u):
        return self.on_vmors[u]

    def square(self, s):
        return self.on_squares[s]


def identity_double_functor(d: DoubleCat) -> DoubleFunctor:
    return DoubleFunctor(d, d, {x: x for x in d.objects},
                         {f: f for f in d.hmors}, {u: u for u in d.vmors},
                         {s: s for s in d.squares})


def compose_double_functors(g: DoubleFunctor, f: DoubleFunctor) -> DoubleFunctor:
    return DoubleFunctor(f.source, g.target,
                         {x: g.ob(f.ob(x)) for x in f.source.objects},
                         {h: g.hmor(f.hmor(h)) for h in f.source.hmors},
                         {u: g.vmor(f.vmor(u)) for u in f.source.vmors},
                         {s: g.square(f.square(s)) for s in f.source.squares})


def double_functor_tables_equal(f: DoubleFunctor, g: DoubleFunctor) -> bool:
    return (f.on_objects == g.on_objects and f.on_hmors == g.on_hmors
            and f.on_vmors == g.on_vmors and f.on_squares == g.on_squares)


def validate_double_functor(fun: DoubleFunctor) -> ValidationReport:
    a, b = fun.source, fun.target
    report = ValidationReport(f"double functor {a.name} -> {b.name}")
    bobjs = set(b.objects)
    for x in a.objects:
        if fun.on_objects.get(x) not in bobjs:
            report.add("object-map", (x,))
    for f, (s, t) in a.hmors.items():
        img = fun.on_hmors.get(f)
        if img is None or img not in b.hmors:
            report.add("hmor-map", (f,))
        elif b.hmors[img] != (fun.on_objects.get(s), fun.on_objects.get(t)):
            report.add("hmor-boundary-preservation", (f, img))
    for u, (s, t) in a.vmors.items():
        img = fun.on_vmors.get(u)
        if img is None or img not in b.vmors:
            report.add("vmor-map", (u,))
        elif b.vmors[img] != (fun.on_objects.get(s), fun.on_objects.get(t)):
            report.add("vmor-boundary-preservation", (u, img))
    for s, (t, bt, l, r) in a.squares.items():
        img = fun.on_squares.get(s)
        if img is None or img not in b.squares:
            report.add("square-map", (s,))
        elif b.squares[img] != (fun.on_hmors.get(t), fun.on_hmors.get(bt),
                                fun.on_vmors.get(l), fun.on_vmors.get(r)):
            report.add("square-boundary-preservation", (s, img))
    if not report.ok:
        return report
    for x in a.objects:
        if fun.hmor(a.hid[x]) != b.hid[fun.ob(x)]:
            report.add("hid-preservation", (x,))
        if fun.vmor(a.vid[x]) != b.vid[fun.ob(x)]:
            report.add("vid-preservation", (x,))
    for u in a.vmors:
        if fun.square(a.hid_sq[u]) != b.hid_sq[fun.vmor(u)]:
            report.add("hid-square-preservation", (u,))
    for f in a.hmors:
        if fun.square(a.vid_sq[f]) != b.vid_sq[fun.hmor(f)]:
            report.add("vid-square-preservation", (f,))
    for (g, f), gf in a.hcomp_h.items():
        if b.hcomp_h[(fun.hmor(g), fun.hmor(f))] != fun.hmor(gf):
            report.add("hcomp-preservation", (g, f))
    for (u2, u1), u in a.vcomp_v.items():
        if b.vcomp_v[(fun.vmor(u2), fun.vmor(u1))] != fun.vmor(u):
            report.add("vcomp-preservation", (u2, u1))
    for (bq, aq), s in a.hcomp_sq.items():
        if b.hcomp_sq[(fun.square(bq), fun.square(aq))] != fun.square(s):
            report.add("hcomp-square-preservation", (bq, aq))
    for (bq, aq), s in a.vcomp_sq.items():
        if b.vcomp_sq[(fun.square(bq), fun.square(aq))] != fun.square(s):
            report.add("vcomp-square-preservation", (bq, aq))
    return report


def is_double_iso(fun: DoubleFunctor) -> bool:
    a, b = fun.source, fun.target
    return (len(set(fun.on_objects.values())) == len(a.objects) == len(b.objects)
            and len(set(fun.on_hmors.values())) == len(a.hmors) == len(b.hmors)
            and len(set(fun.on_vmors.values())) == len(a.vmors) == len(b.vmors)
            and len(set(fun.on_squares.values())) == len(a.squares)
            == len(b.squares))


def invert_double_iso(fun: DoubleFunctor) -> DoubleFunctor:
    if not is_double_iso(fun):
        raise ValueError("double functor is not an isomorphism")
    return DoubleFunctor(fun.target, fun.source,
                         {v: k for k, v in fun.on_objects.items()},
                         {v: k for k, v in fun.on_hmors.items()},
                         {v: k for k, v in fun.on_vmors.items()},
                         {v: k for k, v in fun.on_squares.items()})


# ---------------------------------------------------------------------------
# vertical transformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class VerticalTransformation:
    source: DoubleFunctor
    target: DoubleFunctor
    at_obj: dict  # object -> vmor of target double category
    at_hmor: dict  # hmor -> square of target double category


def compose_vertical_transformations(second: VerticalTransformation,
                                     first: VerticalTransformation) -> VerticalTransformation:
    """Vertical composite of vertical transformations (first on top)."""
    cod = first.source.target
    at_obj = {x: cod.vcomp_v[(second.at_obj[x], first.at_obj[x])]
              for x in first.at_obj}
    at_hmor = {f: cod.vcomp_sq[(second.at_hmor[f], first.at_hmor[f])]
               for f in first.at_hmor}
    return VerticalTransformation(first.source, second.target, at_obj, at_hmor)


def identity_vertical_transformation(fun: DoubleFunctor) -> VerticalTransformation:
    d = fun.target
    return VerticalTransformation(fun, fun,
                                  {x: d.vid[fun.ob(x)] for x in fun.source.objects},
                                  {f: d.vid_sq[fun.hmor(f)] for f in fun.source.hmors})


def validate_vertical_transformation(a: VerticalTransformation) -> ValidationReport:
    f, g = a.source, a.target
    report = ValidationReport("vertical transformation")
    if f.source is not g.source or f.target is not g.target:
        if not (double_cat_tables_equal(f.source, g.source)
                and double_cat_tables_equal(f.target, g.target)):
            report.add("parallel-functors", ())
            return report
    dom, cod = f.source, f.target
    for x in dom.objects:
        u = a.at_obj.get(x)
        if u is None or cod.vmors.get(u) != (f.ob(x), g.ob(x)):
            report.add("component-boundary", (x,))
    for h, (x, y) in dom.hmors.items():
        s = a.at_hmor.get(h)
        want = (f.hmor(h), g.hmor(h), a.at_obj.get(x), a.at_obj.get(y))
        if s is None or cod.squares.get(s) != want:
            report.add("hmor-component-boundary", (h,))
    if not report.ok:
        return report
    for x in dom.objects:
        if a.at_hmor[dom.hid[x]] != cod.hid_sq[a.at_obj[x]]:
            report.add("hmor-component-identity", (x,))
    for (h2, h1), h in dom.hcomp_h.items():
        if cod.hcomp_sq[(a.at_hmor[h2], a.at_hmor[h1])] != a.at_hmor[h]:
            report.add("hmor-component-composition", (h2, h1))
    for u, (x, y) in dom.vmors.items():
        lhs = cod.vcomp_v[(a.at_obj[y], f.vmor(u))]
        rhs = cod.vcomp_v[(g.vmor(u), a.at_obj[x])]
        if lhs != rhs:
            report.add("strict-vertical-naturality", (u,))
    if not report.ok:
        return report
    for s in dom.squares:
        top, bottom = dom.top(s), dom.bottom(s)
        lhs = cod.vcomp_sq[(a.at_hmor[bottom], f.square(s))]
        rhs = cod.vcomp_sq[(g.square(s), a.at_hmor[top])]
        if lhs != rhs:
            report.add("square-naturality", (s,))
    return report


# ---------------------------------------------------------------------------
# slices and double terminal objects
# ---------------------------------------------------------------------------


def slice_double(d: DoubleCat, xh):
    """The double slice over xh and its projection."""
    if xh not in set(d.objects):
        raise ValueError(f"{xh!r} is not an object of {d.name}")
    objects = []
    for x in d.objects:
        for g in d.hmors_between(x, xh):
            objects.append((x, g))
    objset = set(objects)
    hmors = {}
    for (y, h) in objects:
        for f, (x, y2) in d.hmors.items():
            if y2 != y:
                continue
            g = d.hcomp_h[(h, f)]
            hmors[(f, h)] = ((x, g), (y, h))
    vmors = {}
    exh = d.vid[xh]
    for s, (t, b, l, r) in d.squares.items():
        if r == exh and (d.hsrc(t), t) in objset:
            vmors[s] = ((d.hsrc(t), t), (d.hsrc(b), b))
    squares = {}
    for alpha, (t, b, l, r) in d.squares.items():
        for theta in vmors:
            if d.left(theta) == r:
                eta = d.hcomp_sq[(theta, alpha)]
                squares[(alpha, theta)] = ((t, d.top(theta)), (b, d.bottom(theta)),
                                           eta, theta)
    hid = {(x, g): (d.hid[x], g) for (x, g) in objects}
    vid = {(x, g): d.vid_sq[g] for (x, g) in objects}
    hid_sq = {eta: (d.hid_sq[d.left(eta)], eta) for eta in vmors}
    vid_sq = {(f, h): (d.vid_sq[f], d.vid_sq[h]) for (f, h) in hmors}
    hcomp = {}
    for (f2, h2) in hmors:
        for (f1, h1) in hmors:
            if hmors[(f1, h1)][1] == hmors[(f2, h2)][0]:
                hcomp[((f2, h2), (f1, h1))] = (d.hcomp_h[(f2, f1)], h2)
    vcomp = {}
    for e2 in vmors:
        for e1 in vmors:
            if vmors[e1][1] == vmors[e2][0]:
                vcomp[(e2, e1)] = d.vcomp_sq[(e2, e1)]
    hcomp_sq = {}
    for (b2, t2) in squares:
        for (b1, t1) in squares:
            if squares[(b1, t1)][3] == squares[(b2, t2)][2]:
                hcomp_sq[((b2, t2), (b1, t1))] = (d.hcomp_sq[(b2, b1)], t2)
    vcomp_sq = {}
    for (b2, t2) in squares:
        for (b1, t1) in squares:
            if squares[(b1, t1)][1] == squares[(b2, t2)][0]:
                vcomp_sq[((b2, t2), (b1, t1))] = (d.vcomp_sq[(b2, b1)],
                                                  d.vcomp_sq[(t2, t1)])
    total = DoubleCat(f"{d.name}/{xh}", tuple(objects), hmors, vmors, squares,
                      hid, vid, hid_sq, vid_sq, hcomp, vcomp, hcomp_sq,
                      vcomp_sq)
    projection = DoubleFunctor(total, d,
                               {(x, g): x for (x, g) in objects},
                               {(f, h): f for (f, h) in hmors},
                               {eta: d.left(eta) for eta in vmors},
                               {(alpha, theta): alpha for (alpha, theta) in squares})
    return total, projection


@dataclass(frozen=True, eq=False)
class TerminalWitness:
    obj: object
    t: dict  # object -> the unique hmor into obj
    tau: dict  # vmor -> the unique square over it


def is_double_terminal(d: DoubleCat, xh):
    """TerminalWitness if xh is double terminal, else None."""
    t = {}
    for x in d.objects:
        hs = d.hmors_between(x, xh)
        if len(hs) != 1:
            return None
        t[x] = hs[0]
    exh = d.vid[xh]
    tau = {}
    for u, (x, xp) in d.vmors.items():
        sqs = d.square_by_boundary(t[x], t[xp], u, exh)
        if len(sqs) != 1:
            return None
        tau[u] = sqs[0]
    return TerminalWitness(xh, t, tau)


def double_terminal_objects(d: DoubleCat):
    out = []
    for x in sorted(d.objects, key=idkey):
        w = is_double_terminal(d, x)
        if w is not None:
            out.append(w)
    return out


# ---------------------------------------------------------------------------
# desk-scale isomorphism search
# ---------------------------------------------------------------------------


def search_double_isomorphism(a: DoubleCat, b: DoubleCat, budget=10**6):
    """Backtracking search for an isomorphism a -> b; None if there is none."""
    if (len(a.objects) != len(b.objects) or len(a.hmors) != len(b.hmors)
            or len(a.vmors) != len(b.vmors) or len(a.squares) != len(b.squares)):
        return None
    aob = sorted(a.objects, key=idkey)
    bob = sorted(b.objects, key=idkey)
    spent = [0]

    def extend_cells(ob_map):
        hmap, vmap = {}, {}
        for f, (s, t) in a.hmors.items():
            cands = b.hmors_between(ob_map[s], ob_map[t])
            if a.hid[s] == f:
                cands = [b.hid[ob_map[s]]] if s == t else []
            hmap[f] = cands
        for u, (s, t) in a.vmors.items():
            cands = sorted((v for v, bd in b.vmors.items()
                            if bd == (ob_map[s], ob_map[t])), key=idkey)
            if a.vid[s] == u:
                cands = [b.vid[ob_map[s]]] if s == t else []
            vmap[u] = cands
        return hmap, vmap

    def try_assign(items, cands, check):
        """Backtrack a bijective assignment items[i] -> cands[items[i]]."""
        order = sorted(items, key=lambda k: (len(cands[k]), idkey(k)))
        used = set()
        assign = {}

        def rec(i):
            spent[0] += 1
            if spent[0] > budget:
                raise RuntimeError("isomorphism search budget exceeded")
            if i == len(order):
                return check(assign)
            k = order[i]
            for c in cands[k]:
                if c in used:
                    continue
                assign[k] = c
                used.add(c)
                if rec(i + 1):
                    return True
                used.discard(c)
                del assign[k]
            return False

        return rec(0), assign

    result = {}

    def check_full(ob_map):
        hcands, vcands = extend_cells(ob_map)
        if any(not v for v in hcands.values()) or any(not v for v in vcands.values()):
            return False

        def hcheck(hm):
            return all(b.hcomp_h.get((hm[g], hm[f])) == hm[gf]
                       for (g, f), gf in a.hcomp_h.items())

        ok, hmap = try_assign(list(a.hmors), hcands, hcheck)
        if not ok:
            return False

        def vcheck(vm):
            return all(b.vcomp_v.get((vm[u2], vm[u1])) == vm[u]
                       for (u2, u1), u in a.vcomp_v.items())

        ok, vmap = try_assign(list(a.vmors), vcands, vcheck)
        if not ok:
            return False
        scands = {}
        for s, (t, bt, l, r) in a.squares.items():
            scands[s] = b.square_by_boundary(hmap[t], hmap[bt], vmap[l], vmap[r])
            if not scands[s]:
                return False

        def scheck(sm):
            return (all(b.hcomp_sq.get((sm[b2], sm[a1])) == sm[s]
                        for (b2, a1), s in a.hcomp_sq.items())
                    and all(b.vcomp_sq.get((sm[b2], sm[a1])) == sm[s]
                            for (b2, a1), s in a.vcomp_sq.items()))

        ok, smap = try_assign(list(a.squares), scands, scheck)
        if not ok:
            return False
        fun = DoubleFunctor(a, b, dict(ob_map), hmap, vmap, smap)
        if validate_double_functor(fun).ok and is_double_iso(fun):
            result["iso"] = fun
            return True
        return False

    def perm(i, ob_map, used):
        if i == len(aob):
            return check_full(dict(ob_map))
        for y in bob:
            if y in used:
                continue
            ob_map[aob[i]] = y
            used.add(y)
            if perm(i + 1, ob_map, used):
                return True
            used.discard(y)
        ob_map.pop(aob[i], None)
        return False

    if not aob:
        fun = DoubleFunctor(a, b, {}, {}, {}, {})
        return fun
    if perm(0, {}, set()):
        return result["iso"]
    return None
