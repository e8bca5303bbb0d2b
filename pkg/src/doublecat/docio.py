"""JSON document ingestion and serialization.

Documents carry a top-level ``kind`` and ``version`` plus a payload of named
IDs.  IDs are strings or nested arrays of strings (tuples in memory); maps
whose keys are IDs are stored as sorted lists of pairs, so serialization is
canonical and diffs are stable.  Loading resolves every referenced ID and
runs the matching validator; failures raise distinct error classes.
"""

from __future__ import annotations

import json

from .dblcat import DoubleCat, DoubleFunctor, validate_double_category, \
    validate_double_functor
from .dfib import DiscreteDoubleFibration, check_dfib
from .fincat import (
    FinCat,
    FinFunctor,
    ProfMorphism,
    Profunctor,
    compose_profunctors,
    identity_functor,
    identity_profunctor,
    profunctor_tables_equal,
    validate_category,
)
from .presheaf import (
    HorizontalTransf,
    LaxDoublePresheaf,
    make_presheaf,
    validate_horizontal_transformation,
    validate_presheaf,
)
from .util import ValidationReport, idkey

VERSION = 1
KINDS = ("category", "doublecat", "presheaf", "functor", "dfib",
         "transformation")


class ParseError(Exception):
    """Malformed document text or layout."""


class UnresolvedIdError(ParseError):
    """A payload entry references an ID that is not declared."""


class DocValidationError(Exception):
    """The payload parsed but failed its structural validator."""

    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


class Document:
    def __init__(self, kind, payload, version=VERSION):
        self.kind = kind
        self.version = version
        self.payload = payload  # the in-memory structure


# ---------------------------------------------------------------------------
# token encoding
# ---------------------------------------------------------------------------


def _enc(tok):
    if isinstance(tok, str):
        return tok
    if isinstance(tok, tuple):
        return [_enc(t) for t in tok]
    raise ParseError(f"unsupported ID token {tok!r}")


def _dec(tok):
    if isinstance(tok, str):
        return tok
    if isinstance(tok, list):
        return tuple(_dec(t) for t in tok)
    raise ParseError(f"unsupported ID token {tok!r}")


def _enc_map(d, arity=1):
    rows = []
    for k, v in d.items():
        key = list(k) if arity > 1 else [k]
        rows.append([_enc(p) for p in key] + [_enc(v)])
    rows.sort(key=lambda row: idkey(tuple(_dec(p) for p in row)))
    return rows


def _dec_map(rows, arity=1, what="map"):
    out = {}
    for row in rows:
        if len(row) != arity + 1:
            raise ParseError(f"bad {what} row of length {len(row)}")
        parts = [_dec(p) for p in row]
        key = parts[0] if arity == 1 else tuple(parts[:arity])
        out[key] = parts[arity]
    return out


# ---------------------------------------------------------------------------
# categories
# ---------------------------------------------------------------------------


def _category_payload(c: FinCat):
    return {
        "name": c.name,
        "objects": sorted((_enc(x) for x in c.objects),
                          key=lambda t: idkey(_dec(t))),
        "morphisms": sorted(([_enc(m), _enc(s), _enc(t)]
                             for m, (s, t) in c.morphisms.items()),
                            key=lambda r: idkey(_dec(r[0]))),
        "identity": _enc_map(c.identity),
        "composition": _enc_map(c.composition, arity=2),
    }


def _parse_category(payload) -> FinCat:
    objects = tuple(_dec(x) for x in payload["objects"])
    morphisms = {}
    for row in payload["morphisms"]:
        m, s, t = (_dec(p) for p in row)
        if s not in set(objects) or t not in set(objects):
            raise UnresolvedIdError(f"morphism {m!r} references missing object")
        morphisms[m] = (s, t)
    identity = _dec_map(payload["identity"], what="identity")
    composition = _dec_map(payload["composition"], arity=2, what="composition")
    for key, val in list(identity.items()) + [(k, v) for k, v in composition.items()]:
        if val not in morphisms:
            raise UnresolvedIdError(f"table entry {key!r} -> missing morphism {val!r}")
    return FinCat(payload.get("name", "category"), objects, morphisms,
                  identity, composition)


# ---------------------------------------------------------------------------
# double categories
# ---------------------------------------------------------------------------


def _doublecat_payload(d: DoubleCat):
    return {
        "name": d.name,
        "objects": sorted((_enc(x) for x in d.objects),
                          key=lambda t: idkey(_dec(t))),
        "hmors": sorted(([_enc(m), _enc(s), _enc(t)]
                         for m, (s, t) in d.hmors.items()),
                        key=lambda r: idkey(_dec(r[0]))),
        "vmors": sorted(([_enc(m), _enc(s), _enc(t)]
                         for m, (s, t) in d.vmors.items()),
                        key=lambda r: idkey(_dec(r[0]))),
        "squares": sorted(([_enc(m)] + [_enc(p) for p in bnd]
                           for m, bnd in d.squares.items()),
                          key=lambda r: idkey(_dec(r[0]))),
        "hid": _enc_map(d.hid),
        "vid": _enc_map(d.vid),
        "hid_sq": _enc_map(d.hid_sq),
        "vid_sq": _enc_map(d.vid_sq),
        "hcomp_h": _enc_map(d.hcomp_h, arity=2),
        "vcomp_v": _enc_map(d.vcomp_v, arity=2),
        "hcomp_sq": _enc_map(d.hcomp_sq, arity=2),
        "vcomp_sq": _enc_map(d.vcomp_sq, arity=2),
    }


def _parse_doublecat(payload) -> DoubleCat:
    objects = tuple(_dec(x) for x in payload["objects"])
    objset = set(objects)

    def cells(rows, what):
        out = {}
        for row in rows:
            m, s, t = (_dec(p) for p in row)
            if s not in objset or t not in objset:
                raise UnresolvedIdError(f"{what} {m!r} references missing object")
            out[m] = (s, t)
        return out

    hmors = cells(payload["hmors"], "hmor")
    vmors = cells(payload["vmors"], "vmor")
    squares = {}
    for row in payload["squares"]:
        parts = [_dec(p) for p in row]
        sid, top, bottom, left, right = parts
        if top not in hmors or bottom not in hmors:
            raise UnresolvedIdError(f"square {sid!r} references a missing hmor")
        if left not in vmors or right not in vmors:
            raise UnresolvedIdError(f"square {sid!r} references a missing vmor")
        squares[sid] = (top, bottom, left, right)
    return DoubleCat(
        payload.get("name", "doublecat"), objects, hmors, vmors, squares,
        _dec_map(payload["hid"]), _dec_map(payload["vid"]),
        _dec_map(payload["hid_sq"]), _dec_map(payload["vid_sq"]),
        _dec_map(payload["hcomp_h"], arity=2),
        _dec_map(payload["vcomp_v"], arity=2),
        _dec_map(payload["hcomp_sq"], arity=2),
        _dec_map(payload["vcomp_sq"], arity=2))


# ---------------------------------------------------------------------------
# functors, profunctors, presheaves, transformations
# ---------------------------------------------------------------------------


def _finfunctor_payload(f: FinFunctor):
    return {"on_objects": _enc_map(f.on_objects),
            "on_morphisms": _enc_map(f.on_morphisms)}


def _parse_finfunctor(payload, source, target) -> FinFunctor:
    return FinFunctor(source, target, _dec_map(payload["on_objects"]),
                      _dec_map(payload["on_morphisms"]))


def _profunctor_payload(u: Profunctor):
    elements = []
    for (x, y), els in u.elements.items():
        row = [_enc(x), _enc(y),
               sorted((_enc(e) for e in els), key=lambda t: idkey(_dec(t)))]
        elements.append(row)
    elements.sort(key=lambda r: idkey((_dec(r[0]), _dec(r[1]))))
    return {"elements": elements, "action": _enc_map(u.action, arity=3)}


def _parse_profunctor(payload, name, source, target) -> Profunctor:
    elements = {}
    for row in payload["elements"]:
        x, y = _dec(row[0]), _dec(row[1])
        elements[(x, y)] = frozenset(_dec(e) for e in row[2])
    action = _dec_map(payload["action"], arity=3, what="action")
    return Profunctor(name, source, target, elements, action)


def _mapping_payload(pm: ProfMorphism):
    rows = []
    for (x, y), comp in pm.mapping.items():
        for e, img in comp.items():
            rows.append([_enc(x), _enc(y), _enc(e), _enc(img)])
    rows.sort(key=lambda r: idkey(tuple(_dec(p) for p in r)))
    return rows


def _parse_mapping(rows, source: Profunctor):
    mapping = {pair: {} for pair in source.elements}
    for row in rows:
        x, y, e, img = (_dec(p) for p in row)
        if (x, y) not in mapping:
            raise UnresolvedIdError(f"mapping component {(x, y)!r} out of range")
        mapping[(x, y)][e] = img
    return mapping


def _presheaf_payload(x: LaxDoublePresheaf):
    return {
        "name": x.name,
        "base": _doublecat_payload(x.base),
        "on_obj": sorted(([_enc(ob), _category_payload(cat)]
                          for ob, cat in x.on_obj.items()),
                         key=lambda r: idkey(_dec(r[0]))),
        "on_hmor": sorted(([_enc(f), _finfunctor_payload(fun)]
                           for f, fun in x.on_hmor.items()),
                          key=lambda r: idkey(_dec(r[0]))),
        "on_vmor": sorted(([_enc(u), _profunctor_payload(p)]
                           for u, p in x.on_vmor.items()),
                          key=lambda r: idkey(_dec(r[0]))),
        "on_square": sorted(([_enc(s), _mapping_payload(pm)]
                             for s, pm in x.on_square.items()),
                            key=lambda r: idkey(_dec(r[0]))),
        "mu": sorted(([_enc(u1), _enc(u2), _mapping_payload(pm)]
                      for (u1, u2), pm in x.mu.items()),
                     key=lambda r: idkey((_dec(r[0]), _dec(r[1])))),
    }


def _parse_presheaf(payload) -> LaxDoublePresheaf:
    base = _parse_doublecat(payload["base"])
    report = validate_double_category(base)
    if not report.ok:
        raise DocValidationError(report)
    on_obj = {}
    for row in payload["on_obj"]:
        ob = _dec(row[0])
        if ob not in set(base.objects):
            raise UnresolvedIdError(f"value at missing object {ob!r}")
        on_obj[ob] = _parse_category(row[1])
    on_hmor = {}
    for row in payload["on_hmor"]:
        f = _dec(row[0])
        if f not in base.hmors:
            raise UnresolvedIdError(f"value at missing hmor {f!r}")
        s, t = base.hmors[f]
        on_hmor[f] = _parse_finfunctor(row[1], on_obj[t], on_obj[s])
    on_vmor = {}
    for row in payload["on_vmor"]:
        u = _dec(row[0])
        if u not in base.vmors:
            raise UnresolvedIdError(f"value at missing vmor {u!r}")
        s, t = base.vmors[u]
        prof = _parse_profunctor(row[1], f"value({u})", on_obj[s], on_obj[t])
        if u == base.vid[s]:
            canonical = identity_profunctor(on_obj[s])
            if not profunctor_tables_equal(prof, canonical):
                rep = ValidationReport(f"presheaf value at {u!r}")
                rep.add("normality-identity-profunctor", (u,),
                        "stored identity value differs from the hom table")
                raise DocValidationError(rep)
            prof = canonical
        on_vmor[u] = prof
    on_square = {}
    for row in payload["on_square"]:
        sq = _dec(row[0])
        if sq not in base.squares:
            raise UnresolvedIdError(f"value at missing square {sq!r}")
        top, bottom, left, right = base.squares[sq]
        src = on_vmor[right]
        on_square[sq] = ProfMorphism(f"value({sq})", src, on_vmor[left],
                                     on_hmor[top], on_hmor[bottom],
                                     _parse_mapping(row[1], src))
    mu = {}
    for row in payload["mu"]:
        u1, u2 = _dec(row[0]), _dec(row[1])
        if (u2, u1) not in base.vcomp_v:
            raise UnresolvedIdError(f"mu at non-composable pair {(u1, u2)!r}")
        src = compose_profunctors(on_vmor[u1], on_vmor[u2])
        tgt = on_vmor[base.vcomp_v[(u2, u1)]]
        mu[(u1, u2)] = ProfMorphism(f"mu({u1},{u2})", src, tgt,
                                    identity_functor(src.source),
                                    identity_functor(src.target),
                                    _parse_mapping(row[2], src))
    x = make_presheaf(payload.get("name", "presheaf"), base, on_obj, on_hmor,
                      on_vmor, on_square, mu)
    return x


def _doublefunctor_payload(f: DoubleFunctor):
    return {
        "source": _doublecat_payload(f.source),
        "target": _doublecat_payload(f.target),
        "on_objects": _enc_map(f.on_objects),
        "on_hmors": _enc_map(f.on_hmors),
        "on_vmors": _enc_map(f.on_vmors),
        "on_squares": _enc_map(f.on_squares),
    }


def _parse_doublefunctor(payload) -> DoubleFunctor:
    source = _parse_doublecat(payload["source"])
    target = _parse_doublecat(payload["target"])
    for d in (source, target):
        report = validate_double_category(d)
        if not report.ok:
            raise DocValidationError(report)
    return DoubleFunctor(source, target,
                         _dec_map(payload["on_objects"]),
                         _dec_map(payload["on_hmors"]),
                         _dec_map(payload["on_vmors"]),
                         _dec_map(payload["on_squares"]))


def _transformation_payload(f: HorizontalTransf):
    return {
        "name": f.name,
        "source": _presheaf_payload(f.source),
        "target": _presheaf_payload(f.target),
        "at_obj": sorted(([_enc(ob), _finfunctor_payload(fun)]
                          for ob, fun in f.at_obj.items()),
                         key=lambda r: idkey(_dec(r[0]))),
        "at_vmor": sorted(([_enc(u), _mapping_payload(pm)]
                           for u, pm in f.at_vmor.items()),
                          key=lambda r: idkey(_dec(r[0]))),
    }


def _parse_transformation(payload) -> HorizontalTransf:
    source = _parse_presheaf(payload["source"])
    target = _parse_presheaf(payload["target"])
    for x in (source, target):
        report = validate_presheaf(x)
        if not report.ok:
            raise DocValidationError(report)
    base = source.base
    at_obj = {}
    for row in payload["at_obj"]:
        ob = _dec(row[0])
        if ob not in set(base.objects):
            raise UnresolvedIdError(f"component at missing object {ob!r}")
        at_obj[ob] = _parse_finfunctor(row[1], source.on_obj[ob],
                                       target.on_obj[ob])
    at_vmor = {}
    for row in payload["at_vmor"]:
        u = _dec(row[0])
        if u not in base.vmors:
            raise UnresolvedIdError(f"component at missing vmor {u!r}")
        s, t = base.vmors[u]
        src = source.on_vmor[u]
        at_vmor[u] = ProfMorphism(f"component({u})", src, target.on_vmor[u],
                                  at_obj[s], at_obj[t],
                                  _parse_mapping(row[1], src))
    return HorizontalTransf(payload.get("name", "transformation"), source,
                            target, at_obj, at_vmor)


# ---------------------------------------------------------------------------
# top level
# ---------------------------------------------------------------------------


def serialize(obj, kind=None) -> str:
    """Canonical JSON text for a supported structure."""
    if kind is None:
        kind = infer_kind(obj)
    builders = {
        "category": _category_payload,
        "doublecat": _doublecat_payload,
        "presheaf": _presheaf_payload,
        "functor": lambda f: _doublefunctor_payload(f),
        "dfib": lambda d: _doublefunctor_payload(
            d.functor if isinstance(d, DiscreteDoubleFibration) else d),
        "transformation": _transformation_payload,
    }
    if kind not in builders:
        raise ParseError(f"unknown document kind {kind!r}")
    doc = {"kind": kind, "version": VERSION, "payload": builders[kind](obj)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def infer_kind(obj) -> str:
    if isinstance(obj, FinCat):
        return "category"
    if isinstance(obj, DoubleCat):
        return "doublecat"
    if isinstance(obj, LaxDoublePresheaf):
        return "presheaf"
    if isinstance(obj, DiscreteDoubleFibration):
        return "dfib"
    if isinstance(obj, DoubleFunctor):
        return "functor"
    if isinstance(obj, HorizontalTransf):
        return "transformation"
    raise ParseError(f"cannot serialize {type(obj).__name__}")


def parse(text: str) -> Document:
    """Parse and validate a document; returns the in-memory structure."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict) or "kind" not in raw or "payload" not in raw:
        raise ParseError("document must be an object with 'kind' and 'payload'")
    kind = raw["kind"]
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}")
    version = raw.get("version", VERSION)
    if version != VERSION:
        raise ParseError(f"unsupported document version {version!r}")
    payload = raw["payload"]
    try:
        if kind == "category":
            obj = _parse_category(payload)
            report = validate_category(obj)
        elif kind == "doublecat":
            obj = _parse_doublecat(payload)
            report = validate_double_category(obj)
        elif kind == "presheaf":
            obj = _parse_presheaf(payload)
            report = validate_presheaf(obj)
        elif kind in ("functor", "dfib"):
            obj = _parse_doublefunctor(payload)
            report = validate_double_functor(obj)
        else:
            obj = _parse_transformation(payload)
            report = validate_horizontal_transformation(obj)
    except KeyError as exc:
        raise ParseError(f"missing payload field {exc.args[0]!r}") from exc
    if not report.ok:
        raise DocValidationError(report)
    if kind == "dfib":
        fib = check_dfib(obj)
        if isinstance(fib, ValidationReport):
            raise DocValidationError(fib)
        obj = fib
    return Document(kind, obj, version)


def load_path(path) -> Document:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())


def dump_path(path, obj, kind=None):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(obj, kind=kind))
