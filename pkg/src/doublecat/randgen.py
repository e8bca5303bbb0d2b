"""Seeded random instances: categories, profunctors, double categories,
presheaves, and fibrations, all valid by construction.

Double categories are generated as thin closures (preorders with a pasting-
closed square relation), embeddings of free categories on DAGs, horizontal
opposites, and Grothendieck totals of representable or constant presheaves.
Presheaves are representables, constants, or fiber presheaves of generated
fibrations; sampling raw comparison tables almost never satisfies coherence,
so everything is built from constructions that guarantee it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dblcat import DoubleCat, embed, horizontal_opposite
from .dfib import DiscreteDoubleFibration, ddel, identity_fibration, slice_fibration
from .fincat import FinCat, FinFunctor, Profunctor, make_profunctor
from .fixtures import thin_double_category
from .groth import groth
from .presheaf import LaxDoublePresheaf, constant_presheaf, representable
from .util import GenerationError, idkey


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    kind: str = "doublecat"  # category | profunctor | doublecat | presheaf | dfib
    max_objects: int = 4
    max_parallel: int = 2  # parallel generating edges per object pair
    max_squares: int = 1  # squares per boundary (thin generation keeps 1)
    max_value_size: int = 3  # value-category sizes for presheaves

    def __post_init__(self):
        if self.max_objects < 1:
            raise GenerationError("max_objects must be at least 1")
        if self.max_parallel < 0 or self.max_squares < 0 or self.max_value_size < 1:
            raise GenerationError("size bounds must be non-negative")


# ---------------------------------------------------------------------------
# categories
# ---------------------------------------------------------------------------


def _free_category_on_dag(name, n, edges):
    """Objects o0..o{n-1}; morphisms are the edge paths of an acyclic graph."""
    objects = tuple(f"o{i}" for i in range(n))
    paths = {i: [((), i)] for i in range(n)}  # start -> [(edge tuple, end)]
    outgoing = {}
    for (i, j, eid) in edges:
        outgoing.setdefault(i, []).append((j, eid))

    def walk(i):
        out = [((), i)]
        for (j, eid) in outgoing.get(i, ()):
            out.extend([((eid,) + rest, end) for (rest, end) in walk(j)])
        return out

    morphisms = {}
    for i in range(n):
        for (trail, end) in walk(i):
            morphisms[("p", f"o{i}", f"o{end}", trail)] = (f"o{i}", f"o{end}")
    identity = {f"o{i}": ("p", f"o{i}", f"o{i}", ()) for i in range(n)}
    composition = {}
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if ft == gs:
                composition[(g, f)] = ("p", fs, gt, f[3] + g[3])
    return FinCat(name, objects, morphisms, identity, composition)


def random_category(rng: random.Random, max_objects=4, max_parallel=2,
                    max_hom=3, max_morphisms=24) -> FinCat:
    """A free category on a random DAG, with hom sets capped at max_hom."""
    n = rng.randint(1, max_objects)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(rng.randint(0, max_parallel)):
                edges.append((i, j, f"e{i}_{j}_{k}"))
    rng.shuffle(edges)
    while True:
        cat = _free_category_on_dag(f"R{n}", n, edges)
        homs = [len(cat.hom(x, y)) for x in cat.objects for y in cat.objects]
        if len(cat.morphisms) <= max_morphisms and max(homs, default=0) <= max_hom:
            return cat
        if not edges:
            raise GenerationError(
                f"cannot close composition within {max_morphisms} morphisms")
        edges.pop()


def random_discrete_category(rng: random.Random, max_objects=4) -> FinCat:
    n = rng.randint(1, max_objects)
    objects = tuple(f"o{i}" for i in range(n))
    morphisms = {("p", x, x, ()): (x, x) for x in objects}
    identity = {x: ("p", x, x, ()) for x in objects}
    composition = {(m, m): m for m in morphisms}
    return FinCat(f"D{n}", objects, morphisms, identity, composition)


def random_functor(rng: random.Random, source: FinCat, target: FinCat,
                   attempts=20) -> FinFunctor:
    """A random functor from a free-on-DAG category; falls back to a constant."""
    gens = [m for m in sorted(source.morphisms, key=idkey)
            if not source.is_identity(m) and len(m[3]) == 1]
    for _ in range(attempts):
        ob_map = {x: rng.choice(target.objects) for x in source.objects}
        mor_map = {}
        ok = True
        for g in gens:
            s, t = source.morphisms[g]
            choices = target.hom(ob_map[s], ob_map[t])
            if not choices:
                ok = False
                break
            mor_map[g] = rng.choice(choices)
        if not ok:
            continue
        full = {}
        for m, (s, t) in source.morphisms.items():
            img = target.identity[ob_map[s]]
            for eid in m[3]:
                step = mor_map[("p",) + _edge_endpoints(source, eid) + ((eid,),)]
                img = target.compose(step, img)
            full[m] = img
        return FinFunctor(source, target, ob_map, full)
    anchor = rng.choice(target.objects)
    return FinFunctor(source, target,
                      {x: anchor for x in source.objects},
                      {m: target.identity[anchor] for m in source.morphisms})


def _edge_endpoints(cat: FinCat, eid):
    for m, (s, t) in cat.morphisms.items():
        if m[3] == (eid,):
            return (s, t)
    raise KeyError(eid)


def random_profunctor(rng: random.Random, spec: RandomSpec) -> Profunctor:
    """Either a free table over discrete categories or one induced by functors."""
    if rng.random() < 0.5:
        c = random_discrete_category(rng, spec.max_objects)
        cp = random_discrete_category(rng, spec.max_objects)
        elements = {}
        for x in c.objects:
            for y in cp.objects:
                k = rng.randint(0, spec.max_value_size)
                elements[(x, y)] = frozenset((("el", x, y, str(i)))
                                             for i in range(k))
        return make_profunctor("Rprof", c, cp, elements,
                               lambda f, fp, e: e)
    c = random_category(rng, spec.max_objects, spec.max_parallel,
                        max_hom=spec.max_value_size)
    cp = random_category(rng, spec.max_objects, spec.max_parallel,
                         max_hom=spec.max_value_size)
    d = random_category(rng, spec.max_objects, spec.max_parallel,
                        max_hom=spec.max_value_size)
    f = random_functor(rng, c, d)
    g = random_functor(rng, cp, d)
    elements = {}
    for x in c.objects:
        for y in cp.objects:
            elements[(x, y)] = frozenset(("el", x, y, m)
                                         for m in d.hom(f.ob(x), g.ob(y)))

    def act(m, mp, e):
        inner = d.compose(e[3], f.mor(m))
        return ("el", c.src(m), cp.tgt(mp), d.compose(g.mor(mp), inner))

    return make_profunctor("Rprof", c, cp, elements, act)


def random_profunctor_from(rng: random.Random, spec: RandomSpec,
                           source: FinCat) -> Profunctor:
    """A functor-induced profunctor whose source is the given category."""
    d = random_category(rng, spec.max_objects, spec.max_parallel,
                        max_hom=spec.max_value_size)
    f = random_functor(rng, source, d)
    cpp = random_category(rng, spec.max_objects, spec.max_parallel,
                          max_hom=spec.max_value_size)
    g = random_functor(rng, cpp, d)
    elements = {}
    for x in source.objects:
        for y in cpp.objects:
            elements[(x, y)] = frozenset(("el", x, y, m)
                                         for m in d.hom(f.ob(x), g.ob(y)))

    def act(m, mp, e):
        inner = d.compose(e[3], f.mor(m))
        return ("el", source.src(m), cpp.tgt(mp), d.compose(g.mor(mp), inner))

    return make_profunctor("Rprof2", source, cpp, elements, act)


def random_composable_profunctors(rng: random.Random, spec: RandomSpec):
    """A composable pair u: C -|-> C', v: C' -|-> C''."""
    u = random_profunctor(rng, spec)
    v = random_profunctor_from(rng, spec, u.target)
    return u, v


# ---------------------------------------------------------------------------
# double categories
# ---------------------------------------------------------------------------


def _random_preorder(rng: random.Random, objects, density=0.4):
    rel = {(x, x) for x in objects}
    for x in objects:
        for y in objects:
            if x != y and rng.random() < density:
                rel.add((x, y))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def _closed_square_corners(rng: random.Random, objects, hrel, vrel, density):
    corners = set()
    for x in objects:  # identity boundaries are mandatory
        corners.add((x, x, x, x))
    for (x, y) in hrel:
        corners.add((x, y, x, y))  # e_f
    for (x, xp) in vrel:
        corners.add((x, x, xp, xp))  # 1_u
    candidates = [(x, y, xp, yp) for (x, y) in hrel for (xp, yp) in hrel
                  if (x, xp) in vrel and (y, yp) in vrel]
    for c in sorted(candidates):
        if rng.random() < density:
            corners.add(c)
    # close under horizontal and vertical pasting
    changed = True
    while changed:
        changed = False
        current = list(corners)
        for (x, y, xp, yp) in current:
            for (x2, y2, xp2, yp2) in current:
                if (y, yp) == (x2, xp2):  # horizontal: a then b
                    c = (x, y2, xp, yp2)
                    if c in set(candidates) | corners and c not in corners:
                        if (x, y2) in hrel and (xp, yp2) in hrel:
                            corners.add(c)
                            changed = True
                if (xp, yp) == (x2, y2):  # vertical
                    c = (x, y, xp2, yp2)
                    if c not in corners and (x, xp2) in vrel and (y, yp2) in vrel:
                        corners.add(c)
                        changed = True
    return corners


def random_thin_double(rng: random.Random, spec: RandomSpec) -> DoubleCat:
    n = rng.randint(1, spec.max_objects)
    objects = [f"o{i}" for i in range(n)]
    hrel = _random_preorder(rng, objects)
    vrel = _random_preorder(rng, objects)
    if rng.random() < 0.4:
        corners = "all"
    else:
        corners = _closed_square_corners(rng, objects, hrel, vrel,
                                         density=rng.random())
    return thin_double_category(f"T{n}", objects, hrel, vrel, corners)


def random_double_category(rng: random.Random, spec: RandomSpec) -> DoubleCat:
    roll = rng.random()
    if roll < 0.40:
        d = random_thin_double(rng, spec)
    elif roll < 0.55:
        d = embed(random_category(rng, spec.max_objects, spec.max_parallel,
                                  max_hom=spec.max_value_size), "vertical")
    elif roll < 0.70:
        d = embed(random_category(rng, spec.max_objects, spec.max_parallel,
                                  max_hom=spec.max_value_size), "horizontal")
    elif roll < 0.85:
        base = random_thin_double(rng, spec)
        xh = rng.choice(sorted(base.objects, key=idkey))
        d = groth(representable(base, xh)).total
    else:
        d = horizontal_opposite(random_thin_double(rng, spec))
    return d


# ---------------------------------------------------------------------------
# presheaves and fibrations
# ---------------------------------------------------------------------------


def random_presheaf(rng: random.Random, spec: RandomSpec) -> LaxDoublePresheaf:
    base = random_double_category(rng, spec)
    roll = rng.random()
    if roll < 0.45:
        xh = rng.choice(sorted(base.objects, key=idkey))
        return representable(base, xh)
    if roll < 0.70:
        k = random_category(rng, max_objects=spec.max_value_size,
                            max_parallel=spec.max_parallel,
                            max_hom=spec.max_value_size)
        return constant_presheaf(base, k)
    if roll < 0.85:
        xh = rng.choice(sorted(base.objects, key=idkey))
        return ddel(groth(representable(base, xh)).projection)
    k = random_category(rng, max_objects=spec.max_value_size,
                        max_parallel=spec.max_parallel,
                        max_hom=spec.max_value_size)
    return ddel(groth(constant_presheaf(base, k)).projection)


def random_dfib(rng: random.Random, spec: RandomSpec) -> DiscreteDoubleFibration:
    roll = rng.random()
    if roll < 0.60:
        return groth(random_presheaf(rng, spec)).projection
    base = random_double_category(rng, spec)
    if roll < 0.80:
        return identity_fibration(base)
    xh = rng.choice(sorted(base.objects, key=idkey))
    return slice_fibration(base, xh)


def generate(spec: RandomSpec):
    """Deterministic per-seed generation of the requested instance kind."""
    rng = random.Random(spec.seed)
    if spec.kind == "category":
        return random_category(rng, spec.max_objects, spec.max_parallel,
                               max_hom=spec.max_value_size)
    if spec.kind == "profunctor":
        return random_profunctor(rng, spec)
    if spec.kind == "doublecat":
        return random_double_category(rng, spec)
    if spec.kind == "presheaf":
        return random_presheaf(rng, spec)
    if spec.kind == "dfib":
        return random_dfib(rng, spec)
    raise GenerationError(f"unknown instance kind {spec.kind!r}")
