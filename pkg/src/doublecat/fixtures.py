"""Hand-built fixture categories and double categories used across the suite."""

from __future__ import annotations

from .dblcat import DoubleCat, build_double_category, embed, v1
from .fincat import FinCat


def _cat(name, objects, gens, relations):
    """Small helper: category from generators with an explicit full table.

    gens: {mor: (src, tgt)} non-identity morphisms.
    relations: {(g, f): h} non-unit composites (must be closed).
    """
    objects = tuple(objects)
    morphisms = {f"id{x}": (x, x) for x in objects}
    morphisms.update(gens)
    identity = {x: f"id{x}" for x in objects}
    composition = {}
    for m, (s, t) in morphisms.items():
        composition[(m, identity[s])] = m
        composition[(identity[t], m)] = m
    composition.update(relations)
    return FinCat(name, objects, morphisms, identity, composition)


def empty_cat() -> FinCat:
    """The category with no objects."""
    return _cat("empty", [], {}, {})


def cat0() -> FinCat:
    """The terminal category."""
    return _cat("[0]", ["*"], {}, {})


def cat1() -> FinCat:
    """The walking arrow 0 -> 1."""
    return _cat("[1]", ["0", "1"], {"f": ("0", "1")}, {})


def cat2() -> FinCat:
    """The chain 0 -> 1 -> 2."""
    return _cat("[2]", ["0", "1", "2"],
                {"a": ("0", "1"), "b": ("1", "2"), "ba": ("0", "2")},
                {("b", "a"): "ba"})


def walking_iso() -> FinCat:
    return _cat("iso", ["0", "1"],
                {"f": ("0", "1"), "g": ("1", "0")},
                {("g", "f"): "id0", ("f", "g"): "id1"})


def parallel_pair() -> FinCat:
    """Two objects with two parallel non-identity arrows."""
    return _cat("pair", ["0", "1"], {"a": ("0", "1"), "b": ("0", "1")}, {})


# ---------------------------------------------------------------------------
# thin double categories
# ---------------------------------------------------------------------------


def thin_double_category(name, objects, hrel, vrel, square_boundaries="all"):
    """A double category with at most one cell per boundary.

    hrel/vrel are preorders given as sets of pairs (must contain the diagonal
    and be transitively closed).  square_boundaries is either "all" (every
    boundary 4-tuple of relation cells carries a square — the quintet flavor)
    or a set of (top, bottom, left, right) object 4-tuples ((x,y,x',y')
    corners) closed under pasting and containing all identity boundaries.
    """
    objects = tuple(objects)
    hrel = set(hrel) | {(x, x) for x in objects}
    vrel = set(vrel) | {(x, x) for x in objects}

    def hm(x, y):
        return ("h", x, y)

    def vm(x, y):
        return ("v", x, y)

    hmors = {hm(x, y): (x, y) for (x, y) in hrel}
    vmors = {vm(x, y): (x, y) for (x, y) in vrel}
    corners_all = [(x, y, xp, yp) for (x, y) in hrel for (xp, yp) in hrel
                   if (x, xp) in vrel and (y, yp) in vrel]
    if square_boundaries == "all":
        corners = set(corners_all)
    else:
        corners = set(square_boundaries)
    squares = {}
    for (x, y, xp, yp) in corners:
        sid = ("sq", x, y, xp, yp)
        squares[sid] = (hm(x, y), hm(xp, yp), vm(x, xp), vm(y, yp))
    hid = {x: hm(x, x) for x in objects}
    vid = {x: vm(x, x) for x in objects}
    hid_sq = {vm(x, xp): ("sq", x, x, xp, xp) for (x, xp) in vrel}
    vid_sq = {hm(x, y): ("sq", x, y, x, y) for (x, y) in hrel}
    hcomp = {}
    for g, (y, z) in hmors.items():
        for f, (x, y2) in hmors.items():
            if y2 == y:
                hcomp[(g, f)] = hm(x, z)
    vcomp = {}
    for u2, (y, z) in vmors.items():
        for u1, (x, y2) in vmors.items():
            if y2 == y:
                vcomp[(u2, u1)] = vm(x, z)
    hcomp_sq, vcomp_sq = {}, {}
    for b, bb in squares.items():
        for a, ab in squares.items():
            if ab[3] == bb[2]:  # right edge of a = left edge of b
                tgt = ("sq", a[1], b[2], a[3], b[4])
                if tgt in squares:
                    hcomp_sq[(b, a)] = tgt
            if ab[1] == bb[0]:  # bottom of a = top of b
                tgt = ("sq", a[1], a[2], b[3], b[4])
                if tgt in squares:
                    vcomp_sq[(b, a)] = tgt
    return DoubleCat(name, objects, hmors, vmors, squares, hid, vid, hid_sq,
                     vid_sq, hcomp, vcomp, hcomp_sq, vcomp_sq)


def quintet_of_preorder(name, objects, rel) -> DoubleCat:
    """Both directions the same preorder, a square on every commuting boundary."""
    return thin_double_category(name, objects, rel, rel, "all")


# ---------------------------------------------------------------------------
# double category fixtures
# ---------------------------------------------------------------------------


def dc0() -> DoubleCat:
    """One object, all four composition tables trivial."""
    return build_double_category("DC0", ["*"])


def dch1() -> DoubleCat:
    """The walking horizontal morphism H([1])."""
    d = embed(cat1(), "horizontal")
    return DoubleCat("DCH1", d.objects, d.hmors, d.vmors, d.squares, d.hid,
                     d.vid, d.hid_sq, d.vid_sq, d.hcomp_h, d.vcomp_v,
                     d.hcomp_sq, d.vcomp_sq)


def dcv1() -> DoubleCat:
    """The walking vertical morphism V([1])."""
    d = embed(cat1(), "vertical")
    return DoubleCat("DCV1", d.objects, d.hmors, d.vmors, d.squares, d.hid,
                     d.vid, d.hid_sq, d.vid_sq, d.hcomp_h, d.vcomp_v,
                     d.hcomp_sq, d.vcomp_sq)


def e1() -> DoubleCat:
    """Two vertical 2-chains joined by one square over the composites.

    Generated by g: x→y, g2: x2→y2, vertical chains u,u1 (left) and v,v1
    (right) with composites w = u1•u, wv = v1•v, and a single non-identity
    square alpha with boundary (g, g2, w, wv).  The hom-set ℂ(x1, y1) is
    empty, so nothing over (u,v) composes with anything over (u1,v1), while
    alpha sits over the composite pair.
    """
    return build_double_category(
        "E1",
        ["x", "x1", "x2", "y", "y1", "y2"],
        hmors={"g": ("x", "y"), "g2": ("x2", "y2")},
        vmors={"u": ("x", "x1"), "u1": ("x1", "x2"), "w": ("x", "x2"),
               "v": ("y", "y1"), "v1": ("y1", "y2"), "wv": ("y", "y2")},
        squares={"alpha": ("g", "g2", "w", "wv")},
        vcomp={("u1", "u"): "w", ("v1", "v"): "wv"},
    )


def e2() -> DoubleCat:
    """Two stacked generator squares whose vertical composite exists.

    alpha: (g, h, u, e_y) on top of alpha2: (h, gp, e_x1, uh), composing to
    alphaC: (g, gp, u, uh).  The hom-set ℂ(x, y1) is empty.
    """
    return build_double_category(
        "E2",
        ["x", "x1", "y", "y1"],
        hmors={"g": ("x", "y"), "h": ("x1", "y"), "gp": ("x1", "y1")},
        vmors={"u": ("x", "x1"), "uh": ("y", "y1")},
        squares={"alpha": ("g", "h", "u", v1("y")),
                 "alpha2": ("h", "gp", v1("x1"), "uh"),
                 "alphaC": ("g", "gp", "u", "uh")},
        vcomp_sq={("alpha2", "alpha"): "alphaC"},
    )


def q3() -> DoubleCat:
    """Quintet double category of the chain poset 0 < 1 < 2."""
    rel = [("0", "1"), ("1", "2"), ("0", "2")]
    return quintet_of_preorder("Q3", ["0", "1", "2"], rel)


def fixture_double_categories():
    """The named fixture bases, in a stable order."""
    return {
        "DC0": dc0(),
        "DCH1": dch1(),
        "DCV1": dcv1(),
        "E1": e1(),
        "E2": e2(),
        "Q3": q3(),
    }


def fixture_categories():
    return {
        "cat0": cat0(),
        "cat1": cat1(),
        "cat2": cat2(),
        "iso": walking_iso(),
        "pair": parallel_pair(),
    }
