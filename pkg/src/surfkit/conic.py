"""Symbolic checks for a conic bundle and a relative cubic over an elliptic curve.

Sections of line bundles on the base curve appear as parameters whose only
known property is where they vanish: ``zeros[param]`` is a set of point
labels (empty means nowhere zero).  Fibre coordinates are ``y1, y2, y3``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import IncompleteDataError, InvalidActionError, PreconditionError
from .symalg import (
    AssumptionSet,
    Poly,
    RankCertificate,
    apply_ring_map,
    jacobian,
    parse_poly,
    rank_lower_bound_certificate,
    substitute,
)

Y = ("y1", "y2", "y3")


@dataclass
class ConicBundleForm:
    f: Poly
    zeros: dict[str, frozenset[str]]
    coords: tuple[str, ...] = Y

    def __post_init__(self):
        if not self.f.is_homogeneous(self.coords, 2):
            raise PreconditionError(f"{self.f} is not a quadratic form in {self.coords}")

    @property
    def params(self) -> frozenset[str]:
        return self.f.symbols - set(self.coords)


@dataclass
class CubicFamilyMember:
    g: Poly
    zeros: dict[str, frozenset[str]]
    coords: tuple[str, ...] = Y

    def __post_init__(self):
        if not self.g.is_homogeneous(self.coords, 3):
            raise PreconditionError(f"{self.g} is not a cubic form in {self.coords}")

    @property
    def params(self) -> frozenset[str]:
        return self.g.symbols - set(self.coords)


def _check_metadata(params, zeros: Mapping[str, frozenset[str]]):
    missing = sorted(set(params) - set(zeros))
    if missing:
        raise IncompleteDataError(f"no zero-locus metadata for {missing}")


def check_involution(action: Mapping[str, Poly]) -> None:
    for s, img in action.items():
        back = apply_ring_map(Poly.coerce(img), action)
        if back != Poly.var(s):
            raise InvalidActionError(f"action is not an involution: {s} -> {img} -> {back}")


def check_involution_invariance(form: Poly, action: Mapping[str, Poly]) -> bool:
    check_involution(action)
    return apply_ring_map(form, action) == form


# -- singular locus -------------------------------------------------------------

@dataclass(frozen=True)
class Locus:
    coords_zero: tuple[str, ...]
    params_zero: tuple[str, ...]
    labels: frozenset[str]

    def __str__(self):
        parts = ["=".join(self.coords_zero) + "=0"] if self.coords_zero else []
        parts += [f"{p}=0" for p in self.params_zero]
        where = ",".join(sorted(self.labels))
        return ", ".join(parts) + (f" (over {where})" if where else "")


def _diagonal_coefficients(form: ConicBundleForm) -> dict[str, Poly]:
    """``f = sum c_i * y_i^2`` with ``c_i`` monomials in the parameters."""
    out: dict[str, Poly] = {}
    for y, part in zip(form.coords, _split_by_coord(form)):
        out[y] = part
    return out


def _split_by_coord(form: ConicBundleForm):
    pieces = form.f.coeff_in(form.coords)
    coeffs = []
    for i in range(len(form.coords)):
        exps = tuple(2 if j == i else 0 for j in range(len(form.coords)))
        coeffs.append(pieces.pop(exps, Poly.const(0)))
    if pieces:
        raise PreconditionError(f"{form.f} is not diagonal in {form.coords}")
    for c in coeffs:
        if len(c.terms) > 1:
            raise PreconditionError(f"coefficient {c} is not a single monomial")
    return coeffs


def singular_locus(form: ConicBundleForm) -> list[Locus]:
    """Points where ``f`` and all its fibre partials vanish.

    For a diagonal form the partials are ``2 c_i y_i``, so each index needs
    ``y_i = 0`` or a parameter of ``c_i`` to vanish.  A choice is realised
    only if the chosen parameters share a zero label and some coordinate
    stays free.  Loci are reported by the coordinates they force to zero.
    """
    _check_metadata(form.params, form.zeros)
    coeffs = _split_by_coord(form)
    options = []
    for y, c in zip(form.coords, coeffs):
        opts = [("coord", y)]
        if c.is_zero():
            opts = [("free", y)]
        else:
            opts += [("param", p) for p in sorted(c.symbols) if form.zeros[p]]
        options.append(opts)
    loci = set()
    for choice in itertools.product(*options):
        coords_zero = tuple(y for kind, y in choice if kind == "coord")
        params = tuple(sorted({p for kind, p in choice if kind == "param"}))
        if len(coords_zero) == len(form.coords):
            continue
        if not params and not any(kind == "free" for kind, _ in choice):
            continue
        labels = frozenset.intersection(*(form.zeros[p] for p in params)) if params else frozenset()
        if params and not labels:
            continue
        loci.add(Locus(coords_zero, params, labels))
    return sorted(loci, key=lambda L: (L.coords_zero, L.params_zero))


def base_locus_disjointness(form: ConicBundleForm, curve: Sequence[str] = ("y1", "y2")) -> bool:
    """Whether the curve ``{curve coords = 0}`` misses the conic bundle."""
    _check_metadata(form.params, form.zeros)
    residue = substitute(form.f, {y: 0 for y in curve})
    remaining = [y for y in form.coords if y not in curve]
    nonzero = {p for p in form.params if not form.zeros[p]}
    if len(remaining) == 1:
        nonzero.add(remaining[0])  # the origin of the fibre is excluded
    return len(residue.terms) == 1 and residue.symbols <= nonzero


# -- smoothness certificates ----------------------------------------------------

@dataclass(frozen=True)
class CertificateSpec:
    """A locus of the branch curve together with the Jacobian set-up used there."""

    name: str
    zero: tuple[str, ...]
    nonzero: tuple[str, ...]
    base_param: str | None = None
    base_scale: str | None = None
    columns: tuple[str, ...] = ("t",) + Y


@dataclass
class CertificateResult:
    spec: CertificateSpec
    matrix: list[list[Poly]]
    certificate: RankCertificate
    reverified: bool

    @property
    def ok(self) -> bool:
        return bool(self.certificate) and self.reverified

    def describe(self) -> str:
        return f"{self.spec.name}: " + self.certificate.describe(list(self.spec.columns))


@dataclass
class ExclusionResult:
    name: str
    residue: Poly
    nonzero: frozenset[str]
    ok: bool


@dataclass
class SmoothnessReport:
    certificates: list[CertificateResult] = field(default_factory=list)
    exclusions: list[ExclusionResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.certificates) and all(e.ok for e in self.exclusions)

    def failures(self) -> list[str]:
        out = [c.spec.name for c in self.certificates if not c.ok]
        out += [e.name for e in self.exclusions if not e.ok]
        return out


def jacobian_on_locus(form: ConicBundleForm, member: CubicFamilyMember, spec: CertificateSpec) -> list[list[Poly]]:
    """Rows: gradients of ``f`` and ``g`` over (base direction, y1, y2, y3).

    The base column differentiates along the curve through the zero of
    ``spec.base_param``; that parameter's derivative there is the nonzero scalar
    ``spec.base_scale``.  Without a base parameter the column is zero.
    """
    rows = []
    for F in (form.f, member.g):
        grad = jacobian([F], Y)[0]
        if spec.base_param and spec.base_param in F.gens:
            d = jacobian([F], [spec.base_param])[0][0] * Poly.var(spec.base_scale)
        else:
            d = Poly.const(0)
        rows.append([d] + grad)
    return rows


def certify(form: ConicBundleForm, member: CubicFamilyMember, spec: CertificateSpec, seed: int = 0) -> CertificateResult:
    M = jacobian_on_locus(form, member, spec)
    assume = AssumptionSet.of(spec.nonzero, spec.zero)
    cert = rank_lower_bound_certificate(M, assume, 2)
    return CertificateResult(spec, M, cert, cert.reverify(seed))


def exclusion(form: ConicBundleForm, member: CubicFamilyMember, locus: Locus) -> ExclusionResult:
    """Check that the cubic does not pass through a singular point of the conic bundle."""
    _check_metadata(member.params, member.zeros)
    values = {y: 0 for y in locus.coords_zero}
    values.update({p: 0 for p in locus.params_zero})
    residue = substitute(member.g, values)
    free = [y for y in member.coords if y not in locus.coords_zero]
    nonzero = {p for p in member.params | form.params if not (member.zeros.get(p, form.zeros.get(p)) & locus.labels)}
    nonzero -= set(locus.params_zero)
    if len(free) == 1:
        nonzero.add(free[0])
    ok = len(residue.terms) == 1 and residue.symbols <= nonzero
    return ExclusionResult(str(locus), residue, frozenset(nonzero), ok)


def smoothness_certificates(
    form: ConicBundleForm,
    member: CubicFamilyMember,
    specs: Sequence[CertificateSpec] | None = None,
    seed: int = 0,
) -> SmoothnessReport:
    specs = SHIPPED_CERTIFICATES if specs is None else specs
    report = SmoothnessReport()
    for spec in specs:
        report.certificates.append(certify(form, member, spec, seed))
    for locus in singular_locus(form):
        report.exclusions.append(exclusion(form, member, locus))
    return report


# -- shipped data ---------------------------------------------------------------

def _labels(*xs) -> frozenset[str]:
    return frozenset(xs)


SHIPPED_F = "a1^2*y1^2 + a2^2*y2^2 + a3*y3^2"
SHIPPED_G = "b1*y1^3 + b2*y2^3 + b3*y1*y2*y3"
SHIPPED_ZEROS = {
    "a1": _labels("p"),
    "a2": _labels("p'"),
    "a3": _labels(),
    "b1": _labels("p'"),
    "b2": _labels("p"),
    "b3": _labels(),
}
SHIPPED_ACTION_TEXT = {
    "y1": "y2", "y2": "y1", "y3": "-y3",
    "a1": "a2", "a2": "a1",
    "b1": "b2", "b2": "b1", "b3": "-b3",
}

SHIPPED_CERTIFICATES = (
    # b1 = y2 = 0 on the fibre over p'; f = 0 then forces y1 != 0, and k is the
    # derivative of b1 transverse to its zero
    CertificateSpec("C2", zero=("b1", "y2"), nonzero=("a1", "a3", "y1", "k"), base_param="b1", base_scale="k"),
    # y3 = 0 with y1, y2 != 0; f = 0 there keeps a1, a2 away from their zeros
    CertificateSpec("C4", zero=("y3",), nonzero=("a1", "a2", "b3", "y1", "y2")),
)


def shipped_action() -> dict[str, Poly]:
    return {k: parse_poly(v) for k, v in SHIPPED_ACTION_TEXT.items()}


def shipped_form() -> ConicBundleForm:
    f = parse_poly(SHIPPED_F)
    return ConicBundleForm(f, {p: SHIPPED_ZEROS[p] for p in f.symbols - set(Y)})


def shipped_member() -> CubicFamilyMember:
    g = parse_poly(SHIPPED_G)
    return CubicFamilyMember(g, {p: SHIPPED_ZEROS[p] for p in g.symbols - set(Y)})
