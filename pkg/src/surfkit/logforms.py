"""Dimension counts for spaces of logarithmic 1-forms on the plane.

A family is a template

    omega = sum_alpha g_alpha * dlog(h_alpha) + sum_i r_i * dx_i

in homogeneous coordinates ``x1, x2, x3``, where the pole components
``h_alpha`` are homogeneous polynomials and ``g_alpha``, ``r_i`` are linear in
the free coefficient symbols.  Point conditions become linear rows over those
symbols and the dimension is a kernel dimension.

Conditions at a point ``P``:

* residue sum: ``sum g_alpha(P)`` over the components through ``P`` vanishes
  (the condition for the form to lift to the blowup of ``P`` with log poles
  along the strict transforms);
* vanishing: ``omega(P) = 0`` as a section of the log cotangent sheaf.  Off the
  poles these are the three coefficients of ``dx_i``.  On a single smooth
  component ``h`` the section is ``g(P) dlog h + R(P)`` in a log frame, so it
  vanishes iff ``g(P) = 0`` and ``R(P)`` is proportional to ``dh(P)``.  At a
  normal crossing of two components only the two ``g`` values survive.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InconsistencyError, PoleEvaluationError, PreconditionError
from .linalg import rank, rref
from .symalg import Poly, differentiate, evaluate, parse_poly

COORDS = ("x1", "x2", "x3")

Point = tuple[Fraction, Fraction, Fraction]


def as_point(p: Sequence) -> Point:
    if len(p) != 3:
        raise ValueError(f"a plane point needs 3 homogeneous coordinates, got {p!r}")
    pt = tuple(Fraction(x) for x in p)
    if not any(pt):
        raise ValueError("(0:0:0) is not a point")
    return pt


@dataclass
class LogFormFamily:
    name: str
    poles: list[Poly]
    coeff_symbols: list[str]
    log_coeffs: list[Poly]
    regular: list[Poly] = field(default_factory=lambda: [Poly.const(0)] * 3)
    note: str = ""

    def __post_init__(self):
        if len(self.log_coeffs) != len(self.poles):
            raise PreconditionError("one log coefficient per pole component is required")
        if len(self.regular) != 3:
            raise PreconditionError("regular part needs three dx coefficients")
        allowed = set(COORDS) | set(self.coeff_symbols)
        used: set[str] = set()
        for p in [*self.poles, *self.log_coeffs, *self.regular]:
            extra = p.symbols - allowed
            if extra:
                raise PreconditionError(f"{self.name}: undeclared symbols {sorted(extra)}")
            used |= p.symbols
        for h in self.poles:
            if h.symbols - set(COORDS) or not h.is_homogeneous(COORDS) or h.total_degree() < 1:
                raise PreconditionError(f"{self.name}: pole {h} is not a homogeneous form in x1, x2, x3")
        for p in [*self.log_coeffs, *self.regular]:
            if p.is_zero():
                continue
            if not p.is_homogeneous(self.coeff_symbols, 1):
                raise PreconditionError(f"{self.name}: {p} is not linear in the coefficient symbols")
        degs = {g.total_degree(COORDS) for g in self.log_coeffs if not g.is_zero()}
        if len(degs) > 1:
            raise PreconditionError(f"{self.name}: log coefficients have mixed degrees {sorted(degs)}")
        if any(not g.is_homogeneous(COORDS) for g in self.log_coeffs):
            raise PreconditionError(f"{self.name}: log coefficients must be homogeneous")
        missing = set(self.coeff_symbols) - used
        if missing:
            raise PreconditionError(f"{self.name}: coefficient symbols {sorted(missing)} never occur")

    @classmethod
    def from_template(cls, name: str, poles: Iterable[str], symbols: Iterable[str], template: str, note: str = ""):
        """``template`` reads ``dlog1: expr; dlog2: expr; dx3: expr`` (pole indices from 1)."""
        symbols = list(symbols)
        ring = list(COORDS) + symbols
        pole_polys = [parse_poly(h, ring) for h in poles]
        logs = [Poly.const(0)] * len(pole_polys)
        regular = [Poly.const(0)] * 3
        for piece in filter(None, (s.strip() for s in template.split(";"))):
            key, sep, expr = piece.partition(":")
            m = re.fullmatch(r"\s*(dlog|dx)(\d+)\s*", key)
            if not sep or not m:
                raise PreconditionError(f"{name}: bad template piece {piece!r}")
            idx = int(m.group(2))
            value = parse_poly(expr, ring)
            if m.group(1) == "dlog":
                if not 1 <= idx <= len(pole_polys):
                    raise PreconditionError(f"{name}: no pole number {idx}")
                logs[idx - 1] = logs[idx - 1] + value
            else:
                if not 1 <= idx <= 3:
                    raise PreconditionError(f"{name}: no coordinate dx{idx}")
                regular[idx - 1] = regular[idx - 1] + value
        return cls(name, pole_polys, symbols, logs, regular, note)

    def linear_row(self, expr: Poly) -> list[Fraction]:
        """Coefficients of an expression linear in the coefficient symbols."""
        row = []
        for s in self.coeff_symbols:
            row.append(expr.coefficient({s: 1}) if s in expr.gens else Fraction(0))
        # anything left over would be a constant or nonlinear term
        rest = expr - sum((Poly.var(s) * c for s, c in zip(self.coeff_symbols, row)), Poly.const(0))
        if not rest.is_zero():
            raise PreconditionError(f"{self.name}: {expr} is not linear in {self.coeff_symbols}")
        return row

    def poles_through(self, P: Point) -> list[int]:
        values = dict(zip(COORDS, P))
        return [i for i, h in enumerate(self.poles) if evaluate(h, values) == 0]

    def permuted(self, perm: Sequence[int]) -> "LogFormFamily":
        """Same family with pole components reordered."""
        return LogFormFamily(
            self.name,
            [self.poles[i] for i in perm],
            list(self.coeff_symbols),
            [self.log_coeffs[i] for i in perm],
            list(self.regular),
            self.note,
        )


@dataclass
class LinearConstraintSet:
    symbols: list[str]
    rows: list[list[Fraction]] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)

    def add(self, row: Sequence, tag: str) -> None:
        row = [Fraction(x) for x in row]
        if len(row) != len(self.symbols):
            raise ValueError("row length does not match the coefficient symbols")
        if any(row):
            self.rows.append(row)
            self.provenance.append(tag)

    def extend(self, other: "LinearConstraintSet") -> "LinearConstraintSet":
        assert other.symbols == self.symbols
        for row, tag in zip(other.rows, other.provenance):
            self.add(row, tag)
        return self

    def reduced(self) -> list[list[Fraction]]:
        return rref(self.rows, len(self.symbols))

    def render(self) -> list[str]:
        out = []
        for row, tag in zip(self.rows, self.provenance):
            expr = sum((Poly.var(s) * c for s, c in zip(self.symbols, row)), Poly.const(0))
            out.append(f"{expr} = 0    [{tag}]")
        return out

    def __len__(self):
        return len(self.rows)


def _fmt_point(P: Point) -> str:
    return "(" + ":".join(str(x) for x in P) + ")"


def residue_sum_condition(fam: LogFormFamily, point: Sequence) -> LinearConstraintSet:
    P = as_point(point)
    values = dict(zip(COORDS, P))
    cs = LinearConstraintSet(list(fam.coeff_symbols))
    through = fam.poles_through(P)
    total = Poly.const(0)
    for i in through:
        total = total + _at_point(fam.log_coeffs[i], values)
    cs.add(fam.linear_row(total), f"residue-at-{_fmt_point(P)}")
    return cs


def _at_point(expr: Poly, values) -> Poly:
    from .symalg import substitute

    return substitute(expr.with_gens(COORDS), values)


def _gradient(h: Poly, values) -> list[Fraction]:
    h = h.with_gens(COORDS)
    return [evaluate(differentiate(h, x), values) for x in COORDS]


def vanishing_condition(fam: LogFormFamily, point: Sequence) -> LinearConstraintSet:
    P = as_point(point)
    values = dict(zip(COORDS, P))
    tag = f"vanishing-at-{_fmt_point(P)}"
    cs = LinearConstraintSet(list(fam.coeff_symbols))
    through = fam.poles_through(P)
    grads = {i: _gradient(fam.poles[i], values) for i in through}
    for i in through:
        if not any(grads[i]):
            raise PoleEvaluationError(f"pole component {fam.poles[i]} is singular at {_fmt_point(P)}")
    if len(through) > 2:
        raise PoleEvaluationError(f"{len(through)} pole components meet at {_fmt_point(P)}")
    if len(through) == 2:
        a, b = (grads[i] for i in through)
        cross = _cross(a, b)
        if not any(cross):
            raise PoleEvaluationError(f"pole components are tangent at {_fmt_point(P)}")
        for i in through:
            cs.add(fam.linear_row(_at_point(fam.log_coeffs[i], values)), tag)
        return cs

    # regular remainder R = sum of the dlog terms not through P plus the dx part
    R = [_at_point(r, values) for r in fam.regular]
    for i, (h, g) in enumerate(zip(fam.poles, fam.log_coeffs)):
        if i in through:
            continue
        hv = evaluate(h, values)
        grad = _gradient(h, values)
        gv = _at_point(g, values)
        for k in range(3):
            if grad[k]:
                R[k] = R[k] + gv * (grad[k] / hv)
    if not through:
        for expr in R:
            cs.add(fam.linear_row(expr), tag)
        return cs

    (i,) = through
    cs.add(fam.linear_row(_at_point(fam.log_coeffs[i], values)), tag)
    for expr in _cross(R, grads[i]):
        cs.add(fam.linear_row(expr), tag)
    return cs


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def constraints(fam: LogFormFamily, residue_at: Iterable = (), vanish_at: Iterable = ()) -> LinearConstraintSet:
    cs = LinearConstraintSet(list(fam.coeff_symbols))
    for P in residue_at:
        cs.extend(residue_sum_condition(fam, P))
    for P in vanish_at:
        cs.extend(vanishing_condition(fam, P))
    return cs


def solve_dimension(fam: LogFormFamily, cs: LinearConstraintSet) -> int:
    return len(fam.coeff_symbols) - rank(cs.rows, len(fam.coeff_symbols))


def h1_tangent_budget(pieces: Sequence[tuple[str, int]], lower_bound: int) -> int:
    """Sum of the summands bounding ``h^1(T_S)`` from above, checked against a lower bound."""
    total = sum(dim for _, dim in pieces)
    if total < lower_bound:
        raise InconsistencyError(f"upper sum {total} is below the lower bound {lower_bound}")
    return total


# -- shipped families ---------------------------------------------------------

@dataclass
class ShippedFamily:
    family: LogFormFamily
    residue_at: list[Point]
    vanish_at: list[Point]

    def constraints(self) -> LinearConstraintSet:
        return constraints(self.family, self.residue_at, self.vanish_at)

    def dimension(self) -> int:
        return solve_dimension(self.family, self.constraints())


def _pts(*pts) -> list[Point]:
    return [as_point(p) for p in pts]


def v1_family() -> ShippedFamily:
    """Poles on two lines through P4; P1, P2 on those lines, P3 off them."""
    fam = LogFormFamily.from_template(
        "V1",
        ["x1", "x2"],
        ["a12", "a21", "a13", "a23"],
        "dlog1: a12*x2 - a21*x1 + a13*x3; dlog2: -a12*x2 + a21*x1 + a23*x3; dx3: -a13 - a23",
    )
    return ShippedFamily(fam, _pts((0, 0, 1), (0, 1, 0), (1, 0, 0)), _pts((1, 1, 1)))


def v3_family() -> ShippedFamily:
    """One pole line through P4."""
    fam = LogFormFamily.from_template(
        "V3", ["x1"], ["a2", "a3"], "dlog1: a2*x2 + a3*x3; dx2: -a2; dx3: -a3"
    )
    return ShippedFamily(fam, _pts((0, 0, 1)), [])


def v2_family() -> ShippedFamily:
    """A line and a conic with the same log coefficient; vanishing at P1 on the conic."""
    fam = LogFormFamily.from_template(
        "V2",
        ["x1", "x1*x2 + x2*x3 + x1*x3"],
        ["a1", "a2", "a3"],
        "dlog1: a1*x1 + a2*x2 + a3*x3; dlog2: a1*x1 + a2*x2 + a3*x3",
        note="direct count bounds the dimension above; equality comes from the global budget",
    )
    return ShippedFamily(fam, [], _pts((1, 0, 0)))


# the summand with log poles along all three branch divisors vanishes; its proof
# is an exact-sequence argument that is not mechanized here
BI_INVARIANT_DIMENSION = 0


def shipped_families() -> dict[str, ShippedFamily]:
    return {"V1": v1_family(), "V2": v2_family(), "V3": v3_family()}


def budget_pieces() -> list[tuple[str, int]]:
    fams = shipped_families()
    return [("bi-invariant", BI_INVARIANT_DIMENSION)] + [(k, fams[k].dimension()) for k in ("V1", "V2", "V3")]
