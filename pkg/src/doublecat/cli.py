"""Command-line batch verifier.

Subcommands expose each construction and theorem check over JSON documents
(`validate`, `groth`, `ddel`, `slice`, `terminal`, `yoneda`, `represent`,
`roundtrip`, `fib-equiv`, `gen`).  Exit codes: 0 all checks pass, 1 a check
failed, 2 input or budget error.  Check commands accept ``--format machine``
for line-delimited records and ``--report-dir`` to write results.csv plus
summary figures.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import docio
from .dblcat import (
    
    compose_double_functors,
    double_functor_tables_equal,
    double_terminal_objects,
    is_double_iso,
    slice_double,
    validate_double_category,
    validate_double_functor,
)
from .dfib import DiscreteDoubleFibration, check_dfib, ddel
from .fincat import (
    fib,
    fib_composition_comparison,
    prof_morphism_bijective,
    profunctor_tables_equal,
    tabulate,
    validate_prof_morphism,

)
from .fixtures import fixture_double_categories
from .groth import counit_epsilon, groth, representation_check, unit_eta
from .presheaf import (

    compose_transformations,
    enumerate_transformations,
    identity_transformation,
    invert_transformation,
    representable,
    transformation_invertible,
    transformation_tables_equal,
    validate_horizontal_transformation,
    validate_presheaf,
    yoneda_phi,
    yoneda_phi_morphism,
    yoneda_psi,
    yoneda_psi_modification,
)
from .randgen import RandomSpec, generate, random_composable_profunctors
from .report import Reporter
from .util import BudgetExceeded, GenerationError, idkey

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _token(text):
    """Object IDs on the command line: bare strings or JSON arrays."""
    text = text.strip()
    if text.startswith("["):
        try:
            return docio._dec(json.loads(text))
        except (json.JSONDecodeError, docio.ParseError) as exc:
            raise docio.ParseError(f"bad ID argument {text!r}: {exc}")
    return text


def _load(path, kinds):
    doc = docio.load_path(path)
    if doc.kind not in kinds:
        raise docio.ParseError(
            f"expected a {' or '.join(kinds)} document, got {doc.kind!r}")
    return doc


def _finish(reporter: Reporter, args):
    reporter.emit(fmt=args.format)
    if getattr(args, "report_dir", None):
        paths = reporter.write_report(args.report_dir)
        print(f"report written: {', '.join(str(p) for p in paths)}",
              file=sys.stderr)
    return EXIT_OK if reporter.ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args):
    reporter = Reporter()
    try:
        doc = docio.load_path(args.file)
    except docio.DocValidationError as exc:
        for violation in exc.report.violations:
            reporter.add("structure", str(violation), False)
        reporter.emit(fmt=args.format)
        return EXIT_CHECK_FAILED
    reporter.add("structure", f"{doc.kind} document passes its validator", True)
    return _finish(reporter, args)


def cmd_groth(args):
    doc = _load(args.file, ("presheaf",))
    x = doc.payload
    reporter = Reporter()
    g = reporter.timed("groth", "total category builds", lambda: groth(x))
    reporter.timed("groth", "total passes the double category validator",
                   lambda: validate_double_category(g.total).ok)
    reporter.timed("groth", "projection passes the fibration check",
                   lambda: isinstance(check_dfib(g.projection.functor),
                                      DiscreteDoubleFibration))
    if args.out:
        docio.dump_path(args.out, g.projection, kind="dfib")
    return _finish(reporter, args)


def cmd_ddel(args):
    doc = _load(args.file, ("dfib",))
    fibration = doc.payload
    reporter = Reporter()
    x = reporter.timed("fibers", "fiber presheaf builds",
                       lambda: ddel(fibration))
    reporter.timed("fibers", "fiber presheaf passes the presheaf validator",
                   lambda: validate_presheaf(x).ok)
    if args.out:
        docio.dump_path(args.out, x, kind="presheaf")
    return _finish(reporter, args)


def cmd_slice(args):
    doc = _load(args.file, ("doublecat",))
    d = doc.payload
    xh = _token(args.object)
    if xh not in set(d.objects):
        raise docio.UnresolvedIdError(f"{args.object!r} is not an object")
    reporter = Reporter()
    total, proj = slice_double(d, xh)
    reporter.add("slice", "slice passes the double category validator",
                 validate_double_category(total).ok)
    reporter.add("slice", "projection is a double functor",
                 validate_double_functor(proj).ok)
    fibration = check_dfib(proj)
    reporter.add("slice", "projection passes the fibration check",
                 isinstance(fibration, DiscreteDoubleFibration))
    if args.out and isinstance(fibration, DiscreteDoubleFibration):
        docio.dump_path(args.out, fibration, kind="dfib")
    return _finish(reporter, args)


def cmd_terminal(args):
    doc = _load(args.file, ("doublecat", "dfib"))
    d = doc.payload
    if isinstance(d, DiscreteDoubleFibration):
        d = d.total
    witnesses = double_terminal_objects(d)
    if args.format == "machine":
        for w in witnesses:
            print(json.dumps({"terminal": docio._enc(w.obj)}, sort_keys=True))
    else:
        if not witnesses:
            print("no double terminal objects")
        for w in witnesses:
            print(f"double terminal: {w.obj!r}")
    return EXIT_OK


def cmd_yoneda(args):
    doc = _load(args.file, ("presheaf",))
    x = doc.payload
    base = x.base
    reporter = Reporter()
    for xh in sorted(base.objects, key=idkey):
        rep = representable(base, xh)
        transfs = enumerate_transformations(rep, x, budget=args.budget)
        objects = list(x.on_obj[xh].objects)
        reporter.add("yoneda", f"transformation count at {xh!r} equals value size",
                     len(transfs) == len(objects),
                     f"{len(transfs)} vs {len(objects)}")
        ok = all(transformation_tables_equal(
            t, yoneda_phi(x, xh, yoneda_psi(x, xh, t), rep=rep))
            for t in transfs)
        reporter.add("yoneda", f"round-trip on transformations at {xh!r}", ok)
        ok = all(yoneda_psi(x, xh, yoneda_phi(x, xh, xm, rep=rep)) == xm
                 for xm in objects)
        reporter.add("yoneda", f"round-trip on objects at {xh!r}", ok)
        ok = all(yoneda_psi_modification(
            x, xh, yoneda_phi_morphism(x, xh, um, rep=rep)) == um
            for um in x.on_obj[xh].morphisms)
        reporter.add("yoneda", f"round-trip on morphisms at {xh!r}", ok)
    return _finish(reporter, args)


def cmd_represent(args):
    doc = _load(args.file, ("presheaf",))
    x = doc.payload
    reporter = Reporter()
    result = representation_check(x)
    for row in result.rows:
        reporter.add("representation",
                     f"flags agree at ({row.obj!r}, {row.element!r})",
                     row.agree,
                     f"represented={row.is_represented} "
                     f"terminal={row.is_double_terminal}")
    reporter.add("representation", "verdict: flags agree on every pair",
                 result.verdict)
    for (xh, xm) in result.represented_pairs():
        print(f"represented by ({xh!r}, {xm!r})")
    return _finish(reporter, args)


def cmd_roundtrip(args):
    doc = _load(args.file, ("presheaf", "dfib"))
    reporter = Reporter()
    if doc.kind == "presheaf":
        x = doc.payload
        g = groth(x)
        fibers = ddel(g.projection)
        eps = counit_epsilon(x, g, fibers)
        eps_report = validate_horizontal_transformation(eps)
        reporter.add("counit", "counit is a horizontal transformation",
                     eps_report.ok,
                     "" if eps_report.ok else str(eps_report.violations[0]))
        reporter.add("counit", "counit is componentwise bijective",
                     transformation_invertible(eps))
        inv = invert_transformation(eps)
        reporter.add("counit", "inverse composites are identities",
                     transformation_tables_equal(
                         compose_transformations(eps, inv),
                         identity_transformation(x))
                     and transformation_tables_equal(
                         compose_transformations(inv, eps),
                         identity_transformation(fibers)))
        fibration = g.projection
    else:
        fibration = doc.payload
    fibers = ddel(fibration)
    g2 = groth(fibers)
    eta = unit_eta(fibration, fibers, g2)
    eta_report = validate_double_functor(eta)
    reporter.add("unit", "unit is a double functor", eta_report.ok,
                 "" if eta_report.ok else str(eta_report.violations[0]))
    reporter.add("unit", "unit is an isomorphism", is_double_iso(eta))
    reporter.add("unit", "unit lies over the base",
                 double_functor_tables_equal(
                     compose_double_functors(g2.projection.functor, eta),
                     fibration.functor))
    return _finish(reporter, args)


def cmd_fib_equiv(args):
    reporter = Reporter()
    rng = random.Random(args.seed)
    spec = RandomSpec(seed=args.seed, kind="profunctor",
                      max_objects=args.max_objects,
                      max_value_size=args.max_value_size)
    for i in range(args.count):
        u, v = random_composable_profunctors(rng, spec)
        w = tabulate(u)
        reporter.add("fib-equiv", f"instance {i}: tabulation round-trips",
                     profunctor_tables_equal(fib(w), u))
        wv = tabulate(v)
        comparison = fib_composition_comparison(w, wv)
        reporter.add("fib-equiv",
                     f"instance {i}: composite fibers match composite profunctor",
                     validate_prof_morphism(comparison).ok
                     and prof_morphism_bijective(comparison))
    return _finish(reporter, args)


def cmd_gen(args):
    if args.fixture:
        fixtures = fixture_double_categories()
        if args.fixture not in fixtures:
            raise GenerationError(
                f"unknown fixture {args.fixture!r}; choose from "
                f"{sorted(fixtures)}")
        obj = fixtures[args.fixture]
        kind = "doublecat"
    else:
        spec = RandomSpec(seed=args.seed, kind=args.kind,
                          max_objects=args.max_objects,
                          max_parallel=args.max_parallel,
                          max_value_size=args.max_value_size)
        obj = generate(spec)
        kind = args.kind
    text = docio.serialize(obj, kind=kind)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="doublecat",
        description="Verify finite double category constructions and laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "machine"),
                       default="text", help="report format")
        p.add_argument("--report-dir", default=None,
                       help="write results.csv and summary figures here")

    p = sub.add_parser("validate", help="run the structural validator")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("groth", help="total category of a presheaf document")
    p.add_argument("file")
    p.add_argument("--out", default=None, help="write the projection as a dfib document")
    common(p)
    p.set_defaults(fn=cmd_groth)

    p = sub.add_parser("ddel", help="fiber presheaf of a fibration document")
    p.add_argument("file")
    p.add_argument("--out", default=None, help="write the presheaf document")
    common(p)
    p.set_defaults(fn=cmd_ddel)

    p = sub.add_parser("slice", help="slice double category and its projection")
    p.add_argument("file")
    p.add_argument("object")
    p.add_argument("--out", default=None, help="write the projection as a dfib document")
    common(p)
    p.set_defaults(fn=cmd_slice)

    p = sub.add_parser("terminal", help="list double terminal objects")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_terminal)

    p = sub.add_parser("yoneda", help="counting and round-trip checks")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=10**6,
                   help="enumeration budget")
    common(p)
    p.set_defaults(fn=cmd_yoneda)

    p = sub.add_parser("represent", help="representability vs terminality")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_represent)

    p = sub.add_parser("roundtrip", help="unit/counit isomorphism checks")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_roundtrip)

    p = sub.add_parser("fib-equiv",
                       help="profunctor vs two-sided fibration equivalence "
                            "on random instances")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-objects", type=int, default=3)
    p.add_argument("--max-value-size", type=int, default=3)
    common(p)
    p.set_defaults(fn=cmd_fib_equiv)

    p = sub.add_parser("gen", help="emit a fixture or seeded random document")
    p.add_argument("--kind", choices=("category", "doublecat", "presheaf",
                                      "dfib"), default="doublecat")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-objects", type=int, default=4)
    p.add_argument("--max-parallel", type=int, default=2)
    p.add_argument("--max-value-size", type=int, default=3)
    p.add_argument("--fixture", default=None,
                   help="emit a named fixture instead of a random instance")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (docio.ParseError, docio.DocValidationError, FileNotFoundError,
            BudgetExceeded, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
