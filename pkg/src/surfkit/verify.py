"""Replication checks with golden expected strings, and scenario-driven checks.

Every check produces a computed string that is compared byte-for-byte with
its expected string.  ``run_*`` functions return a :class:`VerifyReport`;
:meth:`VerifyReport.exit_code` is 0 iff nothing failed.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from . import bidouble, conic, delpezzo, ellbundle, logforms
from .errors import ScenarioError, SurfkitError
from .lattice import DivisorClass, SurfaceLattice, adjunction_genus, canonical_class, cremona_quadratic, intersect
from .scenario import Scenario
from .symalg import parse_poly

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


@dataclass
class CheckResult:
    check_id: str
    description: str
    expected: str
    computed: str
    anchor: str = ""

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def record(self) -> str:
        return f"{self.check_id}|{self.expected}|{self.computed}|{'PASS' if self.passed else 'FAIL'}"


@dataclass
class VerifyReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def n_pass(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def n_fail(self) -> int:
        return len(self.checks) - self.n_pass

    def failed_ids(self) -> list[str]:
        return [c.check_id for c in self.checks if not c.passed]

    def exit_code(self) -> int:
        return EXIT_OK if self.n_fail == 0 else EXIT_FAIL

    def records(self) -> str:
        return "\n".join(c.record() for c in self.checks) + "\n"

    def table(self) -> str:
        headers = ("check", "expected", "computed", "result", "anchor")
        rows = [(c.check_id, c.expected, c.computed, "PASS" if c.passed else "FAIL", c.anchor) for c in self.checks]
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
        widths[-1] = len(headers[-1])  # anchor column is last and left ragged
        line = lambda r: "  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip()
        out = [f"suite: {self.suite}", line(headers), line(["-" * w for w in widths])]
        out += [line(r) for r in rows]
        out.append(f"{self.n_pass} passed, {self.n_fail} failed, {len(self.checks)} total")
        return "\n".join(out) + "\n"

    def render(self, fmt: str = "table") -> str:
        if fmt == "records":
            return self.records()
        if fmt == "table":
            return self.table()
        raise ValueError(f"unknown format {fmt!r}")


# -- formatting helpers shared by both suites ---------------------------------

def fmt_classes(classes: Iterable[DivisorClass]) -> str:
    return " ".join(str(c) for c in classes)


def fmt_tuple(xs: Iterable) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def fmt_interval(iv: tuple[int, int]) -> str:
    return f"[{iv[0]},{iv[1]}]"


def trace_summary(trace: delpezzo.PeelTrace) -> str:
    """``E4x3, L23 -> effective, residual (2;1,1,1,0)`` and similar."""
    names = delpezzo.curve_names(trace.input.n)
    steps = ", ".join(names.get(c, str(c)) + (f"x{k}" if k > 1 else "") for c, k in trace.peeled) or "nothing"
    R = trace.residual
    if trace.verdict == delpezzo.EFFECTIVE:
        return f"{steps} -> effective, residual {R}"
    if R.d < 0:
        return f"{steps} -> non-effective (d = {R.d})"
    antik = -canonical_class(R.lattice)
    return f"{steps} -> non-effective (-K.R = {intersect(antik, R)})"


def fixed_part_names(trace: delpezzo.PeelTrace) -> str:
    names = delpezzo.curve_names(trace.input.n)
    return " + ".join(sorted(names.get(c, str(c)) for c, _ in trace.peeled))


def fmt_loci(loci: Iterable[conic.Locus]) -> str:
    out = []
    for L in loci:
        parts = ["=".join(L.coords_zero) + "=0"] if L.coords_zero else []
        parts += [f"{p}=0" for p in L.params_zero]
        out.append(", ".join(parts))
    return "; ".join(out)


def fmt_restriction_degrees(rows: list[delpezzo.RestrictionRow]) -> str:
    """Per branch: degrees of O(D) then of O(D - L), as ``a,b,c / d,e,f``."""
    groups = []
    for name in dict.fromkeys(r.branch for r in rows):
        mine = [r for r in rows if r.branch == name]
        groups.append(",".join(str(r.degree_D) for r in mine))
        groups.append(",".join(str(r.degree_D_minus_L) for r in mine))
    return " / ".join(groups)


def restriction_sums(rows: list[delpezzo.RestrictionRow]) -> list[int]:
    sums: dict[str, int] = {}
    for r in rows:
        sums[r.branch] = sums.get(r.branch, 0) + r.h0
    return list(sums.values())


# -- the replication suite -----------------------------------------------------

@dataclass(frozen=True)
class GoldenCheck:
    check_id: str
    description: str
    expected: str
    compute: Callable[[], str]
    anchor: str


def _c(text: str) -> DivisorClass:
    return DivisorClass.parse(text)


def _golden_checks(seed: int = 0) -> list[GoldenCheck]:
    X = SurfaceLattice(4)
    K = canonical_class(X)
    cur = bidouble.CURVES
    base = (1, 2, 3)

    def case1():
        return bidouble.case_i()

    def canonical_identity():
        img = bidouble.canonical_image_class(case1())
        return f"{img} = -K: {fmt_bool(img == -K)}"

    def cremona_triple():
        return fmt_classes(cremona_quadratic(D, base) for D in bidouble.CASE_I_BRANCH)

    def restriction_rows():
        return delpezzo.restriction_table(bidouble.case_i_restriction_branches())

    def splittings():
        return ellbundle.enumerate_splittings()

    def case_hi(case):
        his = [c.interval[1] for c in splittings() if c.case == case]
        return str(max(his))

    form, member = conic.shipped_form(), conic.shipped_member()
    action = conic.shipped_action()

    def cert(name):
        spec = next(s for s in conic.SHIPPED_CERTIFICATES if s.name == name)
        res = conic.certify(form, member, spec, seed)
        if not res.certificate:
            return "not certified"
        cols = ",".join(spec.columns[j] for j in res.certificate.cols)
        return f"rank>=2 via columns {cols}; reverified {fmt_bool(res.reverified)}"

    def exclusions():
        rep = conic.smoothness_certificates(form, member, seed=seed)
        return "; ".join(f"{e.residue} != 0" if e.ok else f"{e.residue} may vanish" for e in rep.exclusions)

    families = logforms.shipped_families()

    def lower_bound():
        return str(sum(restriction_sums(restriction_rows())))

    def budget():
        pieces = logforms.budget_pieces()
        lb = sum(restriction_sums(restriction_rows()))
        return str(logforms.h1_tangent_budget(pieces, lb))

    def peel_summary(text):
        return lambda: trace_summary(delpezzo.peel(_c(text)))

    P = GoldenCheck
    return [
        P("lattice.K2", "self-intersection of the canonical class of the four-point blowup", "5",
          lambda: str(intersect(K, K)), "degree-5 del Pezzo: -K ample with K^2 = 5"),
        P("lattice.replace_L34", "(K + 2 L34 + E4) . L34 in the first replacement step", "-2",
          lambda: str(intersect(K + cur["L34"] * 2 + cur["E4"], cur["L34"])), "log-form count for D1, replacement along L34"),
        P("case1.building", "building classes L1 L2 L3 recovered from the case-I branch classes",
          "(3;1,1,1,0) (2;0,0,0,2) (4;2,2,2,1)", lambda: fmt_classes(case1().building), "case I building data"),
        P("case1.invariants", "(K^2, chi, p_g, q) of the case-I bidouble cover", "(5, 1, 1, 1)",
          lambda: fmt_tuple(bidouble.invariants(case1()).as_tuple()), "case I: p_g = q = 1, K^2 = 5"),
        P("case1.2K_plus_D", "2K + D1 + D2 + D3 equals -K", "(3;1,1,1,1) = -K: true",
          canonical_identity, "K^2 of the cover from (2K + D)^2"),
        P("case2.L2", "second building class of case II", "(2;0,0,0,1)",
          lambda: str(bidouble.case_ii().L2), "case II building data"),
        P("case2.invariants", "(K^2, chi, p_g, q) of the case-II bidouble cover", "(5, 1, 1, 1)",
          lambda: fmt_tuple(bidouble.invariants(bidouble.case_ii()).as_tuple()), "case II: same invariants"),
        P("cremona.triple", "quadratic transformation at P1 P2 P3 applied to D1 D2 D3 of case I",
          "(3;1,1,1,3) (1;-1,-1,-1,-1) (5;3,3,3,1)", cremona_triple, "Cremona map sends (D1,D2,D3) to (D1',D3',D2')"),
        P("cremona.L12", "image of L12", "(0;0,0,-1,0)", lambda: str(cremona_quadratic(cur["L12"], base)), "L_ij -> E'_k"),
        P("cremona.E3", "image of E3", "(1;1,1,0,0)", lambda: str(cremona_quadratic(cur["E3"], base)), "E_k -> L'_ij"),
        P("cremona.Q1", "image of the conic class Q1 (a line missing all four points)", "(1;0,0,0,0)",
          lambda: str(cremona_quadratic(cur["Q"], base)), "Q1 -> C2"),
        P("fiber.genus", "Hurwitz genus of the fibre (1;0,0,0,1) over branch D2", "2",
          lambda: str(bidouble.fiber_genus_by_hurwitz(bidouble.ALBANESE_FIBER, bidouble.CASE_I_BRANCH[1])),
          "genus 2 Albanese fibration"),
        P("family.dimension", "parameter count of the case-I family", "3",
          lambda: str(bidouble.family_dimension_count(bidouble.CASE_I_PARAMETERS)), "3-dimensional family"),
        P("restriction.degrees", "degrees of O_D(D) and O_D(D-L) on every component of D1, D2, D3",
          "-1,-1,-1 / -3,-3,-2 / -1,-1,-1,-1,1 / -3,-2,-3,-2,-3 / -1,-1,-1,0 / -3,-3,-3,-3",
          lambda: fmt_restriction_degrees(restriction_rows()), "restrictions of D and D - L to branch components"),
        P("restriction.h0_sums", "h0 of O_D(D) + O_D(D-L) for D1, D2, D3", "(0, 2, 1)",
          lambda: fmt_tuple(restriction_sums(restriction_rows())), "restrictions of D and D - L to branch components"),
        P("restriction.lower_bound", "lower bound for h1(T_S)", "3", lower_bound, "h1(T_S) >= 3"),
        P("logform.V1", "log forms with poles on two lines through P4", "0",
          lambda: str(families["V1"].dimension()), "two pole lines through P4"),
        P("logform.V3", "log forms with a pole on one line through P4", "1",
          lambda: str(families["V3"].dimension()), "one pole line through P4"),
        P("logform.V2", "log forms with poles on a conic and a line", "2",
          lambda: str(families["V2"].dimension()), "line plus conic; equality from the budget"),
        P("logform.budget", "upper sum for h1(T_S), checked against the lower bound", "3", budget, "h1(T_S) = 3"),
        P("peel.printed", "effectivity trace of (3;3,3,3,-3)", "E4x3 -> non-effective (-K.R = 0)",
          peel_summary("(3;3,3,3,-3)"), "non-effectivity of (3T - F)|_X, printed class"),
        P("h0.printed", "h0 of (3;3,3,3,-3)", "0", lambda: str(delpezzo.h0(_c("(3;3,3,3,-3)"))),
          "non-effectivity of (3T - F)|_X, printed class"),
        P("peel.substituted", "effectivity trace of (5;3,3,3,-3)", "E4x3 -> non-effective (-K.R = 0)",
          peel_summary("(5;3,3,3,-3)"), "non-effectivity of (3T - F)|_X, substituted class"),
        P("h0.substituted", "h0 of (5;3,3,3,-3)", "0", lambda: str(delpezzo.h0(_c("(5;3,3,3,-3)"))),
          "non-effectivity of (3T - F)|_X, substituted class"),
        P("h0.D2", "h0 of D2 = (5;3,3,3,-1)", "3", lambda: str(delpezzo.h0(_c("(5;3,3,3,-1)"))), "dim |D2| = 2"),
        P("fixed.D2", "fixed part of |D2| found by peeling", "E4 + L12 + L13 + L23",
          lambda: fixed_part_names(delpezzo.peel(_c("(5;3,3,3,-1)"))), "dim |D2| = 2"),
        P("bundles.survivors", "splittings of V2 with h0(V2(-2.0)) >= 3", "Line(2, 0)x3",
          lambda: "; ".join(_splitting_label(c) for c in ellbundle.surviving_splittings(splittings())),
          "V2 splits as three copies of O(2.0)"),
        P("bundles.case_i_hi", "upper bound of h0(V2(-2.0)) for V2 indecomposable", "1",
          lambda: case_hi("i"), "indecomposable V2 gives h0 <= 1"),
        P("bundles.case_ii_hi", "largest upper bound of h0(V2(-2.0)) when V2 = rank 2 + line", "2",
          lambda: case_hi("ii"), "rank-2 plus line gives h0 <= 2"),
        P("conic.invariant_f", "conic form invariant under the involution", "true",
          lambda: fmt_bool(conic.check_involution_invariance(form.f, action)), "conic bundle is G-invariant"),
        P("conic.invariant_g", "cubic invariant under the involution", "true",
          lambda: fmt_bool(conic.check_involution_invariance(member.g, action)), "cubic is G-invariant"),
        P("conic.singular_locus", "singular points of the conic bundle", "y1=y3=0, a2=0; y2=y3=0, a1=0",
          lambda: fmt_loci(conic.singular_locus(form)), "singularities P1, P2"),
        P("conic.C1_disjoint", "C1 = {y1 = y2 = 0} misses the conic bundle", "true",
          lambda: fmt_bool(conic.base_locus_disjointness(form)), "C1 does not meet the conic bundle"),
        P("conic.cert_C2", "rank-2 Jacobian certificate on C2", "rank>=2 via columns t,y1; reverified true",
          lambda: cert("C2"), "smoothness at C2"),
        P("conic.cert_C4", "rank-2 Jacobian certificate on C4", "rank>=2 via columns y1,y3; reverified true",
          lambda: cert("C4"), "smoothness at C4"),
        P("conic.exclusion", "cubic restricted to P1 and P2", "b2*y2^3 != 0; b1*y1^3 != 0",
          exclusions, "cubic avoids P1, P2"),
    ]


def _splitting_label(c: ellbundle.SplittingCandidate) -> str:
    counts: dict[str, int] = {}
    for s in c.bundle.summands:
        counts[str(s)] = counts.get(str(s), 0) + 1
    return " + ".join(f"{k}x{v}" if v > 1 else k for k, v in counts.items())


GOLDEN_EXPECTED: dict[str, str] = {c.check_id: c.expected for c in _golden_checks()}


def _run(checks: list[tuple[str, str, str, Callable[[], str], str]]) -> list[CheckResult]:
    out = []
    for cid, desc, expected, fn, anchor in checks:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                computed = fn()
        except SurfkitError as exc:
            computed = f"error: {type(exc).__name__}: {exc}"
        out.append(CheckResult(cid, desc, expected, computed, anchor))
    return out


def _apply_injection(checks, inject: Mapping[str, str] | None):
    inject = dict(inject or {})
    ids = {c[0] for c in checks}
    unknown = set(inject) - ids
    if unknown:
        raise ScenarioError(f"cannot inject into unknown checks {sorted(unknown)}")
    return [(cid, d, inject.get(cid, e), fn, a) for cid, d, e, fn, a in checks]


def run_golden_suite(seed: int = 0, inject: Mapping[str, str] | None = None) -> VerifyReport:
    checks = [(c.check_id, c.description, c.expected, c.compute, c.anchor) for c in _golden_checks(seed)]
    return VerifyReport("golden", _run(_apply_injection(checks, inject)))


# -- scenario-driven checks ----------------------------------------------------

class ScenarioContext:
    """Objects built from a scenario, created on demand."""

    def __init__(self, scn: Scenario, seed: int = 0):
        self.scn = scn
        self.seed = seed
        lat = scn.section("lattice")
        self.n = lat.require("n") if lat else 4

    def _check_n(self, D: DivisorClass, where: str) -> DivisorClass:
        if D.n != self.n:
            raise ScenarioError(f"[{where}] has {D.n} multiplicities, lattice has {self.n}")
        return D

    def branch_classes(self) -> list[DivisorClass]:
        out = []
        for k in (1, 2, 3):
            sec = self.scn.section("branch", f"D{k}")
            if sec is None:
                raise ScenarioError(f"scenario lacks [branch D{k}]")
            out.append(self._check_n(sec.divisor_class(), sec.title))
        return out

    def data(self) -> bidouble.BidoubleData:
        return bidouble.derive_building_data(*self.branch_classes())

    def fiber(self) -> tuple[DivisorClass, int]:
        sec = self.scn.section("fiber")
        if sec is None:
            raise ScenarioError("scenario lacks [fiber]")
        which = sec.get("branch", "D2")
        if which not in ("D1", "D2", "D3"):
            raise ScenarioError(f"fiber branch must be D1, D2 or D3, not {which!r}", sec.line)
        return self._check_n(sec.divisor_class(), sec.title), int(which[1])

    def named_class(self, name: str) -> DivisorClass:
        sec = self.scn.section("class", name) or self.scn.section("branch", name)
        if sec is None:
            if name in bidouble.CURVES and self.n == 4:
                return bidouble.CURVES[name]
            if name == "K":
                return canonical_class(SurfaceLattice(self.n))
            raise ScenarioError(f"no class named {name!r}")
        return self._check_n(sec.divisor_class(), sec.title)

    def family_counts(self) -> list[tuple[str, int]]:
        sec = self.scn.section("family")
        return sec.named("count") if sec else []

    def logform(self, name: str) -> logforms.ShippedFamily:
        sec = self.scn.section("logform", name)
        if sec is None:
            raise ScenarioError(f"no [logform {name}] section")
        fam = logforms.LogFormFamily.from_template(
            name, sec.require("poles"), sec.require("symbols"), sec.require("template"), sec.get("note", "")
        )
        return logforms.ShippedFamily(
            fam,
            [logforms.as_point(p) for p in sec.get("residue_at", [])],
            [logforms.as_point(p) for p in sec.get("vanish_at", [])],
        )

    def budget(self) -> int:
        sec = self.scn.section("budget")
        pieces = list(sec.named("fixture")) if sec else []
        pieces += [(s.name, self.logform(s.name).dimension()) for s in self.scn.of_kind("logform")]
        if sec and sec.get("lower_bound") is not None:
            lb = sec.get("lower_bound")
        else:
            lb = sum(restriction_sums(self.restriction_rows()))
        return logforms.h1_tangent_budget(pieces, lb)

    def restriction_rows(self):
        return delpezzo.restriction_table(bidouble.case_i_restriction_branches(self.data()))

    def _zeros(self, sec) -> dict[str, frozenset[str]]:
        return dict(sec.named("param"))

    def form(self) -> conic.ConicBundleForm:
        sec = self.scn.section("conic")
        if sec is None:
            raise ScenarioError("scenario lacks [conic]")
        return conic.ConicBundleForm(parse_poly(sec.require("form")), self._zeros(sec))

    def member(self) -> conic.CubicFamilyMember:
        sec = self.scn.section("cubic")
        if sec is None:
            raise ScenarioError("scenario lacks [cubic]")
        return conic.CubicFamilyMember(parse_poly(sec.require("form")), self._zeros(sec))

    def action(self):
        sec = self.scn.section("action")
        if sec is None:
            return conic.shipped_action()
        return {k: parse_poly(v) for k, v in sec.named("map")}

    def bundle(self, name: str) -> tuple[ellbundle.EllBundle, ellbundle.LineBundleClass | None]:
        sec = self.scn.section("bundle", name)
        if sec is None:
            raise ScenarioError(f"no [bundle {name}] section")
        try:
            V = ellbundle.EllBundle(ellbundle.parse_summand(s) for s in sec.all("summand"))
            tw = sec.get("twist")
            L = None
            if tw is not None:
                s = ellbundle.parse_summand("line " + tw)
                L = s.cls
        except (ValueError, KeyError) as exc:
            raise ScenarioError(f"[bundle {name}]: {exc}", sec.line) from None
        return V, L

    # each evaluator takes the dotted arguments of the check id
    def evaluate(self, check_id: str) -> str:
        kind, *args = check_id.split(".")
        fn = getattr(self, f"_ev_{kind}", None)
        if fn is None:
            raise ScenarioError(f"unknown check kind {kind!r} in {check_id!r}")
        return fn(*args)

    def _ev_building(self):
        return fmt_classes(self.data().building)

    def _ev_invariants(self):
        return fmt_tuple(bidouble.invariants(self.data()).as_tuple())

    def _ev_canonical_image(self):
        return str(bidouble.canonical_image_class(self.data()))

    def _ev_fiber_genus(self):
        F, k = self.fiber()
        return str(bidouble.fiber_genus_by_hurwitz(F, self.branch_classes()[k - 1]))

    def _ev_family_dimension(self):
        return str(bidouble.family_dimension_count(self.family_counts()))

    def _ev_intersect(self, a, b):
        return str(intersect(self.named_class(a), self.named_class(b)))

    def _ev_genus(self, a):
        return str(adjunction_genus(self.named_class(a)))

    def _ev_h0(self, a):
        return str(delpezzo.h0(self.named_class(a)))

    def _ev_effective(self, a):
        return fmt_bool(delpezzo.is_effective(self.named_class(a))[0])

    def _ev_peel(self, a):
        return trace_summary(delpezzo.peel(self.named_class(a)))

    def _ev_cremona(self, a):
        return str(cremona_quadratic(self.named_class(a), (1, 2, 3)))

    def _ev_restriction(self):
        return fmt_restriction_degrees(self.restriction_rows())

    def _ev_restriction_h0(self):
        return fmt_tuple(restriction_sums(self.restriction_rows()))

    def _ev_logform(self, name):
        return str(self.logform(name).dimension())

    def _ev_budget(self):
        return str(self.budget())

    def _ev_invariant(self, which):
        poly = {"f": lambda: self.form().f, "g": lambda: self.member().g}.get(which)
        if poly is None:
            raise ScenarioError(f"invariant check takes f or g, not {which!r}")
        return fmt_bool(conic.check_involution_invariance(poly(), self.action()))

    def _ev_singular_locus(self):
        return fmt_loci(conic.singular_locus(self.form()))

    def _ev_disjoint(self):
        return fmt_bool(conic.base_locus_disjointness(self.form()))

    def _ev_certificates(self):
        rep = conic.smoothness_certificates(self.form(), self.member(), seed=self.seed)
        return "pass" if rep.ok else "fail: " + ", ".join(rep.failures())

    def _ev_h0_interval(self, name):
        V, L = self.bundle(name)
        if L is not None:
            V = ellbundle.twist(V, L)
        return fmt_interval(ellbundle.h0_interval(V))


def scenario_checks(scn: Scenario, seed: int = 0):
    ctx = ScenarioContext(scn, seed)
    expect = scn.section("expect")
    if expect is None or not expect.named("check"):
        raise ScenarioError(f"{scn.source}: no [expect] checks")
    out = []
    for cid, expected in expect.named("check"):
        out.append((cid, f"scenario check {cid}", expected, (lambda c=cid: ctx.evaluate(c)), scn.source))
    return out


def run_scenario_suite(scn: Scenario, seed: int = 0, inject: Mapping[str, str] | None = None) -> VerifyReport:
    checks = _apply_injection(scenario_checks(scn, seed), inject)
    report = VerifyReport(scn.source, _run(checks))
    for c in report.checks:
        # an unknown check kind is a configuration problem, not a failed check
        if c.computed.startswith("error: ScenarioError"):
            raise ScenarioError(c.computed[len("error: ScenarioError: "):])
    return report


def parse_injection(items: Iterable[str]) -> dict[str, str]:
    out = {}
    for item in items:
        cid, sep, value = item.partition("=")
        if not sep or not cid:
            raise ScenarioError(f"--inject expects CHECK_ID=VALUE, got {item!r}")
        out[cid.strip()] = value.strip()
    return out
