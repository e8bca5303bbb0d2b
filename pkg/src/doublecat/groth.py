"""The double Grothendieck construction, its unit/counit, and the
representability check.

Cell IDs in the total double category are pairs (base cell, element), which
makes the unit and counit comparisons canonical renamings rather than
searches.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dblcat import (
    DoubleCat,
    DoubleFunctor,
    VerticalTransformation,
    is_double_terminal,
)
from .dfib import DiscreteDoubleFibration, check_dfib, ddel
from .fincat import (
    FinFunctor,
    composite_class_of,
    compose_profunctors,
    make_prof_morphism,
)
from .presheaf import (
    GlobularModification,
    HorizontalTransf,
    LaxDoublePresheaf,
    is_represented_by,
    representable,
)
from .util import ValidationReport, idkey


@dataclass(frozen=True, eq=False)
class GrothResult:
    total: DoubleCat
    projection: DiscreteDoubleFibration


def groth(x: LaxDoublePresheaf) -> GrothResult:
    """Total double category of a presheaf with its projection fibration."""
    base = x.base
    objects = tuple(sorted(((b, xm) for b in base.objects
                            for xm in x.on_obj[b].objects), key=idkey))
    hmors = {}
    for f, (s, t) in base.hmors.items():
        for ym in x.on_obj[t].objects:
            hmors[(f, ym)] = ((s, x.on_hmor[f].ob(ym)), (t, ym))
    vmors = {}
    for u, (s, t) in base.vmors.items():
        prof = x.on_vmor[u]
        for (xm, xm2), els in prof.elements.items():
            for e in els:
                vmors[(u, e)] = ((s, xm), (t, xm2))
    squares = {}
    for a, (top, bottom, left, right) in base.squares.items():
        pm = x.on_square[a]
        for (ym, ym2), comp in pm.mapping.items():
            for v, pulled in comp.items():
                squares[(a, v)] = ((top, ym), (bottom, ym2), (left, pulled),
                                   (right, v))
    hid = {(b, xm): (base.hid[b], xm) for (b, xm) in objects}
    vid = {(b, xm): (base.vid[b], x.on_obj[b].identity[xm])
           for (b, xm) in objects}
    hid_sq = {(u, e): (base.hid_sq[u], e) for (u, e) in vmors}
    vid_sq = {(f, ym): (base.vid_sq[f], x.on_obj[hmors[(f, ym)][1][0]].identity[ym])
              for (f, ym) in hmors}
    hcomp = {}
    for (g, zm) in hmors:
        for (f, ym) in hmors:
            if hmors[(f, ym)][1] == hmors[(g, zm)][0]:
                hcomp[((g, zm), (f, ym))] = (base.hcomp_h[(g, f)], zm)
    canon = {key: compose_profunctors(x.on_vmor[key[0]], x.on_vmor[key[1]])
             for key in x.mu}

    def vcompose(u2e, u1e):
        u2, b = u2e
        u1, a = u1e
        (x0, xm), (xmid_b, xmmid) = vmors[u1e]
        (_, _), (x2, xm2) = vmors[u2e]
        key = (u1, u2)
        cls = composite_class_of(x.on_vmor[u1], x.on_vmor[u2], canon[key],
                                 xm, xm2, xmmid, b, a)
        return (base.vcomp_v[(u2, u1)], x.mu[key].mapping[(xm, xm2)][cls])

    vcomp = {}
    for u2e in vmors:
        for u1e in vmors:
            if vmors[u1e][1] == vmors[u2e][0]:
                vcomp[(u2e, u1e)] = vcompose(u2e, u1e)
    hcomp_sq = {}
    for bq in squares:
        for aq in squares:
            if squares[aq][3] == squares[bq][2]:
                hcomp_sq[(bq, aq)] = (base.hcomp_sq[(bq[0], aq[0])], bq[1])
    vcomp_sq = {}
    for bq in squares:
        for aq in squares:
            if squares[aq][1] == squares[bq][0]:
                right_edge = vcomp[(squares[bq][3], squares[aq][3])]
                vcomp_sq[(bq, aq)] = (base.vcomp_sq[(bq[0], aq[0])],
                                      right_edge[1])
    total = DoubleCat(f"total({x.name})", objects, hmors, vmors, squares, hid,
                      vid, hid_sq, vid_sq, hcomp, vcomp, hcomp_sq, vcomp_sq)
    projection = DoubleFunctor(total, base,
                               {ob: ob[0] for ob in objects},
                               {f: f[0] for f in hmors},
                               {u: u[0] for u in vmors},
                               {s: s[0] for s in squares})
    fibration = check_dfib(projection)
    if isinstance(fibration, ValidationReport):
        raise RuntimeError(f"projection failed the fibration check:\n{fibration}")
    return GrothResult(total, fibration)


def groth_morphism(f: HorizontalTransf, gx: GrothResult = None,
                   gy: GrothResult = None) -> DoubleFunctor:
    """The functor of totals over the base induced by a transformation."""
    x, y = f.source, f.target
    gx = gx if gx is not None else groth(x)
    gy = gy if gy is not None else groth(y)
    base = x.base
    on_objects = {(b, xm): (b, f.at_obj[b].ob(xm))
                  for (b, xm) in gx.total.objects}
    on_hmors = {(h, ym): (h, f.at_obj[base.htgt(h)].ob(ym))
                for (h, ym) in gx.total.hmors}
    on_vmors = {}
    for (u, e), ((s, xm), (t, xm2)) in gx.total.vmors.items():
        on_vmors[(u, e)] = (u, f.at_vmor[u].mapping[(xm, xm2)][e])
    on_squares = {}
    for (a, v), bnd in gx.total.squares.items():
        right = base.right(a)
        (_, ym), (_, ym2) = gx.total.vmors[bnd[3]]
        on_squares[(a, v)] = (a, f.at_vmor[right].mapping[(ym, ym2)][v])
    return DoubleFunctor(gx.total, gy.total, on_objects, on_hmors, on_vmors,
                         on_squares)


def groth_2morphism(a: GlobularModification, gx: GrothResult = None,
                    gy: GrothResult = None) -> VerticalTransformation:
    """The vertical transformation of totals induced by a modification."""
    f, g = a.source, a.target
    x, y = f.source, f.target
    gx = gx if gx is not None else groth(x)
    gy = gy if gy is not None else groth(y)
    base = x.base
    fsrc = groth_morphism(f, gx, gy)
    ftgt = groth_morphism(g, gx, gy)
    at_obj = {(b, xm): (base.vid[b], a.at_obj[b].at(xm))
              for (b, xm) in gx.total.objects}
    at_hmor = {(h, ym): (base.vid_sq[h], a.at_obj[base.htgt(h)].at(ym))
               for (h, ym) in gx.total.hmors}
    return VerticalTransformation(fsrc, ftgt, at_obj, at_hmor)


# ---------------------------------------------------------------------------
# the fixed-base 2-equivalence
# ---------------------------------------------------------------------------


def counit_epsilon(x: LaxDoublePresheaf, g: GrothResult = None,
                   fibers: LaxDoublePresheaf = None) -> HorizontalTransf:
    """The canonical renaming from the fibers of the projection back to x."""
    base = x.base
    g = g if g is not None else groth(x)
    fibers = fibers if fibers is not None else ddel(g.projection)
    at_obj = {}
    for b in base.objects:
        src = fibers.on_obj[b]
        at_obj[b] = FinFunctor(src, x.on_obj[b],
                               {ob: ob[1] for ob in src.objects},
                               {m: m[1] for m in src.morphisms})
    at_vmor = {}
    for u, (s, t) in base.vmors.items():

        def fn(e1, e2, v):
            return v[1]

        at_vmor[u] = make_prof_morphism(f"counit@{u}", fibers.on_vmor[u],
                                        x.on_vmor[u], at_obj[s], at_obj[t], fn)
    return HorizontalTransf(f"counit({x.name})", fibers, x, at_obj, at_vmor)


def unit_eta(d: DiscreteDoubleFibration, fibers: LaxDoublePresheaf = None,
             g: GrothResult = None) -> DoubleFunctor:
    """The canonical renaming of the total into the total of its fibers."""
    total = d.total
    p = d.functor
    fibers = fibers if fibers is not None else ddel(d)
    g = g if g is not None else groth(fibers)
    on_objects = {e: (p.ob(e), e) for e in total.objects}
    on_hmors = {f: (p.hmor(f), total.htgt(f)) for f in total.hmors}
    on_vmors = {u: (p.vmor(u), u) for u in total.vmors}
    on_squares = {s: (p.square(s), total.right(s)) for s in total.squares}
    return DoubleFunctor(total, g.total, on_objects, on_hmors, on_vmors,
                         on_squares)


# ---------------------------------------------------------------------------
# representation theorem
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepresentationRow:
    obj: object
    element: object
    is_represented: bool
    is_double_terminal: bool

    @property
    def agree(self):
        return self.is_represented == self.is_double_terminal


@dataclass(frozen=True)
class RepresentationReport:
    rows: tuple

    @property
    def verdict(self):
        return all(r.agree for r in self.rows)

    def represented_pairs(self):
        return [(r.obj, r.element) for r in self.rows if r.is_represented]


def representation_check(x: LaxDoublePresheaf, g: GrothResult = None) -> RepresentationReport:
    """Compare componentwise invertibility with double terminality, pairwise."""
    base = x.base
    g = g if g is not None else groth(x)
    rows = []
    for xh in sorted(base.objects, key=idkey):
        rep = representable(base, xh)
        for xm in sorted(x.on_obj[xh].objects, key=idkey):
            presheaf_side = is_represented_by(x, xh, xm, rep=rep)
            fibration_side = is_double_terminal(g.total, (xh, xm)) is not None
            rows.append(RepresentationRow(xh, xm, presheaf_side,
                                          fibration_side))
    return RepresentationReport(tuple(rows))
