"""Degree-5 del Pezzo surface: the plane blown up at four general points.

Effectivity and ``h0`` are decided by peeling (-1)-curves off the fixed part
and applying Riemann-Roch to the nef residual.  ``h0_interpolation_oracle`` is
an independent route: it counts plane curves with prescribed multiplicities
at four seeded random points by an exact kernel computation.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import (
    NotRationalError,
    OracleInapplicableError,
    UnsupportedClassError,
    UnsupportedSurfaceError,
)
from .lattice import DivisorClass, SurfaceLattice, adjunction_genus, canonical_class, intersect
from .linalg import EchelonBasis

EFFECTIVE = "effective"
NON_EFFECTIVE = "non-effective"


@dataclass(frozen=True)
class NegativeCurveSet:
    curves: tuple[DivisorClass, ...]

    def __iter__(self):
        return iter(self.curves)

    def __len__(self):
        return len(self.curves)

    def __contains__(self, c):
        return c in self.curves


def _require_dp5(lat: SurfaceLattice):
    if lat.n_blowups != 4:
        raise UnsupportedSurfaceError(
            f"only the blowup at 4 points is supported, got {lat.n_blowups} points"
        )


def brute_force_negative_classes(lat: SurfaceLattice, dmax=3, mmax=2) -> list[DivisorClass]:
    """All classes in the box with ``C^2 = -1``, ``p_a = 0`` and ``-K.C = 1``."""
    K = canonical_class(lat)
    found = []
    for d in range(-dmax, dmax + 1):
        for m in itertools.product(range(-mmax, mmax + 1), repeat=lat.n_blowups):
            c = DivisorClass(d, m)
            if intersect(c, c) == -1 and adjunction_genus(c) == 0 and -intersect(K, c) == 1:
                found.append(c)
    return sorted(found)


@lru_cache(maxsize=None)
def _negative_curves(n: int) -> NegativeCurveSet:
    lat = SurfaceLattice(n)
    curves = [lat.exceptional(i) for i in range(1, n + 1)]
    for i, j in itertools.combinations(range(n), 2):
        m = [0] * n
        m[i] = m[j] = 1
        curves.append(DivisorClass(1, tuple(m)))
    curves.sort()
    assert curves == brute_force_negative_classes(lat), "(-1)-curve list disagrees with search"
    return NegativeCurveSet(tuple(curves))


def negative_curves(lat: SurfaceLattice) -> NegativeCurveSet:
    """The ten (-1)-curves ``E_i`` and ``L - E_i - E_j``, in lexicographic order."""
    _require_dp5(lat)
    return _negative_curves(lat.n_blowups)


@lru_cache(maxsize=None)
def conic_fibration_classes(n: int = 4) -> tuple[DivisorClass, ...]:
    """Classes ``F`` with ``F^2 = 0`` and ``-K.F = 2``: ``L - E_i`` and ``2L - sum E_i``."""
    lat = SurfaceLattice(n)
    out = [lat.line() + lat.exceptional(i) * -1 for i in range(1, n + 1)]
    out.append(DivisorClass(2, (1,) * n))
    return tuple(sorted(out))


@dataclass
class PeelTrace:
    input: DivisorClass
    steps: list[tuple[DivisorClass, int]] = field(default_factory=list)
    residual: DivisorClass | None = None
    verdict: str = "undecided"
    reason: str = ""

    @property
    def peeled(self) -> list[tuple[DivisorClass, int]]:
        """Consecutive peel steps of the same curve, collapsed into multiplicities."""
        out: list[tuple[DivisorClass, int]] = []
        for curve, _ in self.steps:
            if out and out[-1][0] == curve:
                out[-1] = (curve, out[-1][1] + 1)
            else:
                out.append((curve, 1))
        return out

    @property
    def fixed_part(self) -> DivisorClass:
        total = self.input.lattice.zero()
        for curve, _ in self.steps:
            total = total + curve
        return total

    @property
    def effective(self) -> bool:
        return self.verdict == EFFECTIVE

    def render(self, names: dict[DivisorClass, str] | None = None) -> str:
        names = names if names is not None else curve_names(self.input.n)
        lines = [f"peel {self.input}"]
        residual = self.input
        for curve, pairing in self.steps:
            residual = residual - curve
            label = names.get(curve, str(curve))
            lines.append(f"  - {label} (pairing {pairing}) -> {residual}")
        lines.append(f"  residual {self.residual}: {self.verdict} ({self.reason})")
        return "\n".join(lines)


def curve_names(n: int = 4) -> dict[DivisorClass, str]:
    lat = SurfaceLattice(n)
    names = {lat.exceptional(i): f"E{i}" for i in range(1, n + 1)}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        m = [0] * n
        m[i - 1] = m[j - 1] = 1
        names[DivisorClass(1, tuple(m))] = f"L{i}{j}"
    return names


def _stop_reason(residual: DivisorClass, anti_k: DivisorClass) -> tuple[str, str] | None:
    if residual.is_zero():
        return EFFECTIVE, "residual is zero"
    if residual.d < 0:
        return NON_EFFECTIVE, "residual has negative degree"
    if intersect(anti_k, residual) <= 0:
        return NON_EFFECTIVE, f"-K.residual = {intersect(anti_k, residual)} <= 0 with residual nonzero"
    return None


def peel(D: DivisorClass) -> PeelTrace:
    """Strip (-1)-curves forced into the fixed part of ``|D|``.

    The curve with the most negative pairing is chosen (ties: lexicographically
    smallest class) and subtracted one copy at a time while its pairing with the
    residual stays negative.  Each step lowers ``-K.residual`` by one, so the
    loop terminates.
    """
    lat = D.lattice
    curves = negative_curves(lat)
    anti_k = -canonical_class(lat)
    trace = PeelTrace(input=D)
    residual = D
    while True:
        stop = _stop_reason(residual, anti_k)
        if stop:
            break
        pairings = [(intersect(residual, c), c) for c in curves if intersect(residual, c) < 0]
        if not pairings:
            stop = (EFFECTIVE, "residual is nef with -K.residual > 0")
            break
        _, curve = min(pairings)
        while True:
            pairing = intersect(residual, curve)
            if pairing >= 0:
                break
            trace.steps.append((curve, pairing))
            residual = residual - curve
            stop = _stop_reason(residual, anti_k)
            if stop:
                break
        if stop:
            break
    trace.residual = residual
    trace.verdict, trace.reason = stop
    # reconstruction identity: input = residual + fixed part
    assert trace.residual + trace.fixed_part == D
    return trace


def is_effective(D: DivisorClass) -> tuple[bool, PeelTrace]:
    trace = peel(D)
    assert trace.verdict in (EFFECTIVE, NON_EFFECTIVE)
    return trace.effective, trace


def euler_characteristic(D: DivisorClass) -> int:
    K = canonical_class(D.lattice)
    twice = intersect(D, D - K)
    assert twice % 2 == 0
    return 1 + twice // 2


def h0(D: DivisorClass) -> int:
    """Dimension of ``H^0(X, O(D))`` on the degree-5 del Pezzo surface."""
    _require_dp5(D.lattice)
    effective, trace = is_effective(D)
    if not effective:
        return 0
    R = trace.residual
    if R.is_zero():
        return 1
    self_int = intersect(R, R)
    if self_int > 0:
        # h1 = h2 = 0 for nef and big classes on a del Pezzo surface
        return euler_characteristic(R)
    if self_int == 0:
        for F in conic_fibration_classes(R.n):
            if R.d % F.d == 0 and R == F * (R.d // F.d):
                return R.d // F.d + 1
    raise UnsupportedClassError(f"nef residual {R} with R^2 = {self_int} is not a fibration multiple")


# -- interpolation oracle -----------------------------------------------------

def general_position_points(seed: int, n: int = 4, bound: int = 30) -> list[tuple[int, int]]:
    """``n`` integer points of the affine chart ``z = 1``, no three collinear."""
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    while len(pts) < n:
        p = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        if p in pts:
            continue
        if any(_collinear(a, b, p) for a, b in itertools.combinations(pts, 2)):
            continue
        pts.append(p)
    return pts


def _collinear(a, b, c) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0


def _monomials(d: int) -> list[tuple[int, int]]:
    return [(a, t - a) for t in range(d + 1) for a in range(t, -1, -1)]


def interpolation_conditions(D: DivisorClass, points: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Rows stating that every Taylor coefficient of order ``< m_i`` vanishes at point ``i``.

    Columns are the monomials ``x^a y^b`` with ``a + b <= d`` of the chart ``z = 1``.
    """
    mons = _monomials(D.d)
    rows = []
    for (x0, y0), mult in zip(points, D.m):
        for i in range(mult):
            for j in range(mult - i):
                rows.append([
                    comb(a, i) * comb(b, j) * x0 ** (a - i) * y0 ** (b - j) if a >= i and b >= j else 0
                    for a, b in mons
                ])
    return rows


def h0_interpolation_oracle(D: DivisorClass, seed: int) -> int:
    """Dimension of degree-``d`` plane curves with multiplicity ``>= m_i`` at random points."""
    if any(x < 0 for x in D.m):
        raise OracleInapplicableError(f"{D} has a negative multiplicity; peel it first")
    if D.n > 4:
        raise UnsupportedSurfaceError("the oracle certifies general position for at most 4 points")
    if D.d < 0:
        return 0
    ncols = (D.d + 1) * (D.d + 2) // 2
    basis = EchelonBasis(ncols)
    for row in interpolation_conditions(D, general_position_points(seed, D.n)):
        basis.add(row)
        if basis.rank == ncols:
            break
    return ncols - basis.rank


# -- restrictions to rational curves ------------------------------------------

def restriction_degree(D: DivisorClass, C: DivisorClass) -> int:
    if adjunction_genus(C) != 0:
        raise NotRationalError(f"{C} has arithmetic genus {adjunction_genus(C)}")
    return intersect(D, C)


def h0_on_rational_curve(deg: int) -> int:
    return max(0, deg + 1)


@dataclass(frozen=True)
class RestrictionRow:
    branch: str
    component: str
    curve: DivisorClass
    degree_D: int
    degree_D_minus_L: int

    @property
    def h0(self) -> int:
        return h0_on_rational_curve(self.degree_D) + h0_on_rational_curve(self.degree_D_minus_L)


def restriction_table(branches) -> list[RestrictionRow]:
    """Degrees of ``O_D(D)`` and ``O_D(D - L)`` on each component of each branch divisor.

    ``branches`` is a sequence of ``(name, D, L, [(component_name, curve), ...])``
    where the components are disjoint smooth rational curves summing to ``D``.
    """
    rows = []
    for name, D, L, comps in branches:
        total = D.lattice.zero()
        for _, c in comps:
            total = total + c
        assert total == D, f"components of {name} sum to {total}, not {D}"
        for (_, a), (_, b) in itertools.combinations(comps, 2):
            assert intersect(a, b) == 0, f"components of {name} meet"
        for cname, c in comps:
            rows.append(RestrictionRow(name, cname, c, restriction_degree(D, c), restriction_degree(D - L, c)))
    return rows
