"""Smooth bidouble covers of the degree-5 del Pezzo surface.

Branch classes ``D1, D2, D3`` determine building classes through
``2 L_i = D_j + D_k``.  The invariants of the cover follow from the standard
formulas for (Z/2)^2 covers:

    K^2 = (2K + D)^2,   chi = 4 chi(O_X) + 1/2 sum L_i (L_i + K),
    p_g = p_g(X) + sum h0(K + L_i),   q = p_g - chi + 1,

with ``chi(O_X) = 1`` and ``p_g(X) = 0`` for the rational base.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

from . import delpezzo
from .errors import InvalidBranchError, NotBidoubleError, ParityError
from .lattice import DivisorClass, adjunction_genus, canonical_class, halve, intersect

_OTHERS = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


@dataclass(frozen=True)
class BidoubleData:
    D1: DivisorClass
    D2: DivisorClass
    D3: DivisorClass
    L1: DivisorClass
    L2: DivisorClass
    L3: DivisorClass

    @property
    def branch(self) -> tuple[DivisorClass, DivisorClass, DivisorClass]:
        return (self.D1, self.D2, self.D3)

    @property
    def building(self) -> tuple[DivisorClass, DivisorClass, DivisorClass]:
        return (self.L1, self.L2, self.L3)

    @property
    def total_branch(self) -> DivisorClass:
        return self.D1 + self.D2 + self.D3

    def relabel(self, perm: Sequence[int]) -> "BidoubleData":
        """Data with branch divisor ``i`` taken from position ``perm[i]`` (0-based)."""
        D = [self.branch[p] for p in perm]
        return derive_building_data(*D)


@dataclass
class CoverInvariants:
    K2: int
    chi: int
    pg: int
    q: int
    fiber_genus: int | None = None
    warnings: list[str] = field(default_factory=list)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.K2, self.chi, self.pg, self.q)


def derive_building_data(D1: DivisorClass, D2: DivisorClass, D3: DivisorClass) -> BidoubleData:
    D = (D1, D2, D3)
    if len({x.n for x in D}) != 1:
        raise NotBidoubleError("branch classes live on different lattices")
    L = []
    for i in range(3):
        j, k = _OTHERS[i]
        try:
            L.append(halve(D[j] + D[k]))
        except ParityError as exc:
            raise NotBidoubleError(f"D{j + 1} + D{k + 1} = {D[j] + D[k]} is not divisible by 2") from exc
    for k in range(3):
        i, j = _OTHERS[k]
        # cannot fail once the halvings exist; kept as a trap for edits to halve()
        assert D[k] + L[k] == L[i] + L[j], "D_k + L_k != L_i + L_j"
    return BidoubleData(*D, *L)


def canonical_image_class(data: BidoubleData) -> DivisorClass:
    """``2K + D``, whose square is ``K^2`` of the cover."""
    K = canonical_class(data.D1.lattice)
    return K * 2 + data.total_branch


def invariants(data: BidoubleData, fiber: DivisorClass | None = None, fiber_branch: int = 2) -> CoverInvariants:
    """Numerical invariants; with ``fiber`` given, also the Hurwitz genus over it.

    ``fiber_branch`` (1-based) selects the branch divisor met by the fibre.
    """
    K = canonical_class(data.D1.lattice)
    K2 = intersect(canonical_image_class(data), canonical_image_class(data))
    twice = sum(intersect(L, L + K) for L in data.building)
    assert twice % 2 == 0
    chi = 4 * 1 + twice // 2
    pg = 0 + sum(delpezzo.h0(K + L) for L in data.building)
    q = pg - chi + 1
    inv = CoverInvariants(K2, chi, pg, q)
    if fiber is not None:
        inv.fiber_genus = fiber_genus_by_hurwitz(fiber, data.branch[fiber_branch - 1])
    if q < 0:
        inv.warnings.append(f"q = {q} < 0: the data cannot come from a geometric cover")
    for w in inv.warnings:
        warnings.warn(w, stacklevel=2)
    return inv


def fiber_genus_by_hurwitz(fiber: DivisorClass, branch: DivisorClass) -> int:
    """Genus of the double cover of a rational fibre branched in ``branch . fiber`` points."""
    if adjunction_genus(fiber) != 0:
        raise InvalidBranchError(f"fibre class {fiber} is not rational")
    b = intersect(branch, fiber)
    return genus_from_branch_degree(b)


def genus_from_branch_degree(b: int) -> int:
    # b = 0 would give a disconnected (trivial) cover, which has no genus
    if b <= 0 or b % 2:
        raise InvalidBranchError(f"branch degree {b} on the fibre must be positive and even")
    return b // 2 - 1


def family_dimension_count(params: Sequence[tuple[str, int]]) -> int:
    total = 0
    for label, count in params:
        if count < 0:
            raise ValueError(f"negative parameter count for {label!r}")
        total += count
    return total


# -- shipped data -------------------------------------------------------------

def _c(text: str) -> DivisorClass:
    return DivisorClass.parse(text)


CASE_I_BRANCH = (_c("(3;1,1,1,3)"), _c("(5;3,3,3,-1)"), _c("(1;-1,-1,-1,1)"))
CASE_II_BRANCH = (_c("(3;1,1,1,3)"), _c("(5;3,3,3,1)"), _c("(1;-1,-1,-1,-1)"))
ALBANESE_FIBER = _c("(1;0,0,0,1)")

# curve classes on the four-point blowup
CURVES = {
    "E1": _c("(0;-1,0,0,0)"),
    "E2": _c("(0;0,-1,0,0)"),
    "E3": _c("(0;0,0,-1,0)"),
    "E4": _c("(0;0,0,0,-1)"),
    "L12": _c("(1;1,1,0,0)"),
    "L13": _c("(1;1,0,1,0)"),
    "L23": _c("(1;0,1,1,0)"),
    "L14": _c("(1;1,0,0,1)"),
    "L24": _c("(1;0,1,0,1)"),
    "L34": _c("(1;0,0,1,1)"),
    "Q": _c("(2;1,1,1,0)"),
    "C": _c("(1;0,0,0,1)"),
}

# components of the case-I branch divisors
CASE_I_COMPONENTS = {
    "D1": ("L14", "L24", "L34"),
    "D2": ("L12", "L13", "L23", "E4", "Q"),
    "D3": ("E1", "E2", "E3", "C"),
}

# parameter count for the case-I family: four points and the triangle are rigid,
# the conic through three points moves in a net, the line through P4 in a pencil
CASE_I_PARAMETERS = (("points", 0), ("triangle", 0), ("conic", 2), ("line", 1))


def case_i() -> BidoubleData:
    return derive_building_data(*CASE_I_BRANCH)


def case_ii() -> BidoubleData:
    return derive_building_data(*CASE_II_BRANCH)


def case_i_restriction_branches(data: BidoubleData | None = None):
    """Input for :func:`delpezzo.restriction_table` describing case I."""
    data = data or case_i()
    out = []
    for k, name in enumerate(("D1", "D2", "D3")):
        comps = [(c, CURVES[c]) for c in CASE_I_COMPONENTS[name]]
        out.append((name, data.branch[k], data.building[k], comps))
    return out
