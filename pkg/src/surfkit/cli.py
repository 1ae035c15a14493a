"""Command-line entry point: ``surfkit <command> [options]``."""
from __future__ import annotations

import argparse
import sys
import warnings

from . import bidouble, conic, delpezzo, ellbundle, logforms
from .errors import ScenarioError, SurfkitError
from .lattice import DivisorClass, adjunction_genus, cremona_quadratic, intersect
from .linalg import format_matrix
from .scenario import Scenario, resolve_scenario
from .verify import (
    EXIT_CONFIG,
    ScenarioContext,
    VerifyReport,
    fmt_interval,
    parse_injection,
    run_golden_suite,
    run_scenario_suite,
)


def _class(text: str) -> DivisorClass:
    try:
        return DivisorClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _base(text: str) -> tuple[int, int, int]:
    parts = text.replace(",", " ").split()
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("base needs three indices, e.g. 1,2,3")
    return tuple(int(p) for p in parts)


def _emit(rows: list[tuple[str, str]], fmt: str, title: str | None = None) -> None:
    """Print key/value rows as an aligned table or as ``key|value`` records."""
    if fmt == "records":
        for k, v in rows:
            print(f"{k}|{v}")
        return
    if title:
        print(title)
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        print(f"  {k.ljust(width)}  {v}")


def _scenario(args) -> Scenario | None:
    return resolve_scenario(args.scenario) if args.scenario else None


# -- commands ---------------------------------------------------------------------

def cmd_lattice(args) -> int:
    if args.op == "intersect":
        if len(args.classes) != 2:
            raise ScenarioError("intersect takes two classes")
        a, b = args.classes
        _emit([(f"{a} . {b}", str(intersect(a, b)))], args.format)
        return 0
    rows = []
    for D in args.classes:
        if args.op == "genus":
            rows.append((str(D), str(adjunction_genus(D))))
            continue
        h = delpezzo.h0(D)
        rows.append((f"h0{D}", str(h)))
        if args.format == "table":
            print(delpezzo.peel(D).render())
        if all(x >= 0 for x in D.m):
            rows.append((f"oracle{D}", str(delpezzo.h0_interpolation_oracle(D, args.seed))))
            if args.debug:
                pts = delpezzo.general_position_points(args.seed, D.n)
                print(f"# points {pts}")
                print(format_matrix(delpezzo.interpolation_conditions(D, pts)))
    _emit(rows, args.format)
    return 0


def cmd_bidouble(args) -> int:
    scn = _scenario(args)
    if scn is not None:
        ctx = ScenarioContext(scn, args.seed)
        data = ctx.data()
        fiber = ctx.fiber() if scn.section("fiber") else None
    else:
        data = bidouble.case_i()
        fiber = (bidouble.ALBANESE_FIBER, 2)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        inv = bidouble.invariants(data, *(fiber or (None,)))
    rows = [(f"D{i}", str(D)) for i, D in enumerate(data.branch, 1)]
    rows += [(f"L{i}", str(L)) for i, L in enumerate(data.building, 1)]
    rows += [("2K+D", str(bidouble.canonical_image_class(data))), ("K2", str(inv.K2)), ("chi", str(inv.chi)),
             ("pg", str(inv.pg)), ("q", str(inv.q))]
    if inv.fiber_genus is not None:
        rows.append(("fiber_genus", str(inv.fiber_genus)))
    for w in caught:
        rows.append(("warning", str(w.message)))
    _emit(rows, args.format, "bidouble cover invariants")
    return 0


def cmd_cremona(args) -> int:
    classes = list(args.classes)
    scn = _scenario(args)
    if scn is not None:
        classes += [s.divisor_class() for s in scn.sections.values() if s.kind in ("branch", "class")]
    if not classes:
        classes = list(bidouble.CASE_I_BRANCH)
    rows = [(str(D), str(cremona_quadratic(D, args.base))) for D in classes]
    _emit(rows, args.format, f"quadratic transformation at base {args.base}")
    return 0


def cmd_logforms(args) -> int:
    scn = _scenario(args)
    if scn is not None:
        ctx = ScenarioContext(scn, args.seed)
        fams = {s.name: ctx.logform(s.name) for s in scn.of_kind("logform")}
    else:
        fams = logforms.shipped_families()
    rows = []
    for name, fam in fams.items():
        cs = fam.constraints()
        if args.format == "table":
            print(f"[{name}] {len(fam.family.coeff_symbols)} coefficients")
            for line in cs.render():
                print(f"    {line}")
        rows.append((name, str(fam.dimension())))
    if scn is None:
        lb = sum(r.h0 for r in delpezzo.restriction_table(bidouble.case_i_restriction_branches()))
        pieces = logforms.budget_pieces()
        rows.append(("budget", f"{logforms.h1_tangent_budget(pieces, lb)} (lower bound {lb})"))
    _emit(rows, args.format, "dimensions")
    return 0


def cmd_bundles(args) -> int:
    scn = _scenario(args)
    rows = []
    if scn is not None:
        ctx = ScenarioContext(scn, args.seed)
        for sec in scn.of_kind("bundle"):
            V, L = ctx.bundle(sec.name)
            W = ellbundle.twist(V, L) if L is not None else V
            rows.append((sec.name, f"{V}: rank {V.rank}, degree {V.degree}, h0 {fmt_interval(ellbundle.h0_interval(W))}"
                         + (" after twist" if L is not None else "")))
        _emit(rows, args.format, "bundles")
        return 0
    cands = ellbundle.enumerate_splittings(threshold=args.threshold)
    for i, c in enumerate(cands):
        rows.append((f"{c.case}.{i}", f"{c.bundle} | h0 {fmt_interval(c.interval)} | {c.verdict}"))
    survivors = ellbundle.surviving_splittings(cands)
    rows.append(("survivors", "; ".join(str(c.bundle) for c in survivors) or "none"))
    _emit(rows, args.format, f"rank-3 degree-6 splittings, threshold h0 >= {args.threshold}")
    return 0


def cmd_conic(args) -> int:
    scn = _scenario(args)
    if scn is not None:
        ctx = ScenarioContext(scn, args.seed)
        form, member, action = ctx.form(), ctx.member(), ctx.action()
    else:
        form, member, action = conic.shipped_form(), conic.shipped_member(), conic.shipped_action()
    rows = [
        ("f", str(form.f)),
        ("g", str(member.g)),
        ("f invariant", str(conic.check_involution_invariance(form.f, action)).lower()),
        ("g invariant", str(conic.check_involution_invariance(member.g, action)).lower()),
    ]
    rows += [("singular", str(L)) for L in conic.singular_locus(form)]
    rows.append(("C1 disjoint", str(conic.base_locus_disjointness(form)).lower()))
    status = 0
    if args.certify:
        rep = conic.smoothness_certificates(form, member, seed=args.seed)
        for c in rep.certificates:
            rows.append((f"cert {c.spec.name}", c.describe() + f"; reverified {str(c.reverified).lower()}"))
        for e in rep.exclusions:
            rows.append((f"exclude {e.name}", f"g -> {e.residue}: {'ok' if e.ok else 'FAILED'}"))
        if not rep.ok:
            rows.append(("failed", ", ".join(rep.failures())))
            status = 1
    _emit(rows, args.format, "conic bundle")
    return status


def cmd_verify(args) -> int:
    inject = parse_injection(args.inject or [])
    if args.paper_suite == bool(args.scenario):
        raise ScenarioError("verify needs exactly one of --paper-suite or --scenario")
    if args.paper_suite:
        report: VerifyReport = run_golden_suite(args.seed, inject)
    else:
        report = run_scenario_suite(_scenario(args), args.seed, inject)
    sys.stdout.write(report.render(args.format))
    return report.exit_code()


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH", help="scenario file, or shipped:<name>")
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--seed", type=int, default=0, help="seed for random points and re-verification")

    parser = argparse.ArgumentParser(prog="surfkit", description="Exact computations on the degree-5 del Pezzo surface.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", parents=[common], help="intersection numbers, genus, h0")
    p.add_argument("op", choices=("intersect", "genus", "h0"))
    p.add_argument("classes", nargs="+", type=_class, metavar="CLASS", help="e.g. '(5;3,3,3,-1)'")
    p.add_argument("--debug", action="store_true", help="dump the interpolation matrix")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("bidouble", parents=[common], help="building data and invariants of a bidouble cover")
    p.set_defaults(func=cmd_bidouble)

    p = sub.add_parser("cremona", parents=[common], help="quadratic transformation of classes")
    p.add_argument("classes", nargs="*", type=_class, metavar="CLASS")
    p.add_argument("--base", type=_base, default=(1, 2, 3))
    p.set_defaults(func=cmd_cremona)

    p = sub.add_parser("logforms", parents=[common], help="log 1-form dimension counts")
    p.set_defaults(func=cmd_logforms)

    p = sub.add_parser("bundles", parents=[common], help="bundles on the elliptic curve")
    p.add_argument("--threshold", type=int, default=3)
    p.set_defaults(func=cmd_bundles)

    p = sub.add_parser("conic", parents=[common], help="conic bundle checks")
    p.add_argument("--certify", action="store_true", help="run the Jacobian rank certificates")
    p.set_defaults(func=cmd_conic)

    p = sub.add_parser("verify", parents=[common], help="run a replication suite")
    p.add_argument("--paper-suite", action="store_true")
    p.add_argument("--inject", action="append", metavar="ID=VALUE", help="override an expected value")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SurfkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG if args.command == "verify" else 1


if __name__ == "__main__":
    sys.exit(main())
