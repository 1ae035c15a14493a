"""Vector bundles on an elliptic curve, tracked through degrees and Pic^0 labels.

Pic^0 is modelled as a formal abelian group with named generators: the free
generator ``g0`` stands for a point class that is not resolved further, and
``t1``, ``t2`` are 2-torsion.  A degree-0 line bundle is trivial iff its label
reduces to 0, provably nontrivial if its label is a nonzero torsion element,
and undecided when a free generator survives.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .errors import RuleInconsistencyError


class PointGroup:
    """Abelian group ``Z^f x prod Z/n_i`` given by generator names and orders (0 = free)."""

    def __init__(self, orders: Mapping[str, int]):
        self.gens = tuple(orders)
        self.orders = dict(orders)
        for g, n in self.orders.items():
            if not re.fullmatch(r"[a-z][a-z0-9_]*", g) or n < 0 or n == 1:
                raise ValueError(f"bad generator {g!r} of order {n}")

    def element(self, coeffs: Mapping[str, int] | Sequence[int] = ()) -> "GroupElement":
        if isinstance(coeffs, Mapping):
            unknown = set(coeffs) - set(self.gens)
            if unknown:
                raise KeyError(f"unknown generators {sorted(unknown)}")
            vec = [coeffs.get(g, 0) for g in self.gens]
        else:
            vec = list(coeffs) + [0] * (len(self.gens) - len(coeffs))
        return GroupElement(self, tuple(self._reduce(vec)))

    def _reduce(self, vec):
        return [c % self.orders[g] if self.orders[g] else c for g, c in zip(self.gens, vec)]

    def zero(self) -> "GroupElement":
        return self.element()

    def parse(self, text: str) -> "GroupElement":
        """Words such as ``0``, ``t1 + t2``, ``2*g0 - t1``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return self.zero()
        coeffs = dict.fromkeys(self.gens, 0)
        for sign, num, name in re.findall(r"([+-]?)(?:(\d+)\*)?([a-z][a-z0-9_]*)", text):
            if name not in coeffs:
                raise KeyError(f"unknown generator {name!r}")
            coeffs[name] += (-1 if sign == "-" else 1) * int(num or 1)
        rebuilt = re.sub(r"([+-]?)(?:(\d+)\*)?([a-z][a-z0-9_]*)", "", text)
        if rebuilt:
            raise ValueError(f"cannot parse group element {text!r}")
        return self.element(coeffs)

    def small_elements(self, free_range: int = 1) -> list["GroupElement"]:
        ranges = [range(n) if n else range(-free_range, free_range + 1) for n in self.orders.values()]
        return [GroupElement(self, v) for v in itertools.product(*ranges)]

    def __eq__(self, other):
        return isinstance(other, PointGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(tuple(self.orders.items()))

    def __repr__(self):
        return f"PointGroup({self.orders})"


@dataclass(frozen=True)
class GroupElement:
    group: PointGroup
    coeffs: tuple[int, ...]

    def _check(self, other):
        if self.group != other.group:
            raise ValueError("elements of different groups")

    def __add__(self, other):
        self._check(other)
        return self.group.element([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self.group.element([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return self.group.element([k * a for a in self.coeffs])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def involves_free(self) -> bool:
        return any(c and not self.group.orders[g] for g, c in zip(self.group.gens, self.coeffs))

    def __str__(self):
        parts = []
        for g, c in zip(self.group.gens, self.coeffs):
            if c:
                body = g if abs(c) == 1 else f"{abs(c)}*{g}"
                parts.append(("-" if c < 0 else "+") + body)
        if not parts:
            return "0"
        s = " ".join(parts).replace("+", "+ ").replace("-", "- ")
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


SHIPPED_GROUP = PointGroup({"g0": 0, "t1": 2, "t2": 2})

Interval = tuple[int, int]


def _add(a: Interval, b: Interval) -> Interval:
    return (a[0] + b[0], a[1] + b[1])


@dataclass(frozen=True)
class LineBundleClass:
    degree: int
    pic0: GroupElement

    def __add__(self, other: "LineBundleClass") -> "LineBundleClass":
        return LineBundleClass(self.degree + other.degree, self.pic0 + other.pic0)

    def dual(self) -> "LineBundleClass":
        return LineBundleClass(-self.degree, -self.pic0)

    def __str__(self):
        return f"O(deg={self.degree}, pic0={self.pic0})"


def point_multiple(k: int, group: PointGroup = SHIPPED_GROUP) -> LineBundleClass:
    """``O(k * 0)``: degree ``k``, trivial Pic^0 part."""
    return LineBundleClass(k, group.zero())


@dataclass(frozen=True)
class Line:
    cls: LineBundleClass

    rank = 1

    @property
    def degree(self) -> int:
        return self.cls.degree

    def h0(self) -> Interval:
        d = self.cls.degree
        if d > 0:
            return (d, d)
        if d < 0:
            return (0, 0)
        if self.cls.pic0.is_zero():
            return (1, 1)
        if not self.cls.pic0.involves_free():
            return (0, 0)
        return (0, 1)

    def twist(self, L: LineBundleClass) -> "Line":
        return Line(self.cls + L)

    def dual(self) -> "Line":
        return Line(self.cls.dual())

    def __str__(self):
        return f"Line({self.cls.degree}, {self.cls.pic0})"


@dataclass(frozen=True)
class Indec:
    rank: int
    degree: int
    det_pic0: GroupElement

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("indecomposable summands here have rank >= 2")

    def h0(self) -> Interval:
        if self.degree > 0:
            return (self.degree, self.degree)
        if self.degree < 0:
            return (0, 0)
        return (0, 1)

    def twist(self, L: LineBundleClass) -> "Indec":
        return Indec(self.rank, self.degree + self.rank * L.degree, self.det_pic0 + L.pic0 * self.rank)

    def dual(self) -> "Indec":
        return Indec(self.rank, -self.degree, -self.det_pic0)

    def __str__(self):
        return f"Indec({self.rank}, {self.degree})"


Summand = Union[Line, Indec]


@dataclass(frozen=True)
class EllBundle:
    summands: tuple[Summand, ...]

    def __init__(self, summands: Iterable[Summand]):
        object.__setattr__(self, "summands", tuple(summands))

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)

    @property
    def degree(self) -> int:
        return sum(s.degree for s in self.summands)

    def __add__(self, other: "EllBundle") -> "EllBundle":
        return EllBundle(self.summands + other.summands)

    def __str__(self):
        return " + ".join(str(s) for s in self.summands) or "0"


def h0_interval(V: EllBundle) -> Interval:
    total = (0, 0)
    for s in V.summands:
        total = _add(total, s.h0())
    return total


def twist(V: EllBundle, L: LineBundleClass) -> EllBundle:
    return EllBundle(s.twist(L) for s in V.summands)


def dual(V: EllBundle) -> EllBundle:
    return EllBundle(s.dual() for s in V.summands)


def riemann_roch_defect(V: EllBundle) -> Interval:
    """``h0 - deg`` as an interval; it must be able to equal ``h1 >= 0``."""
    lo, hi = h0_interval(V)
    out = (lo - V.degree, hi - V.degree)
    if out[1] < 0:
        raise RuleInconsistencyError(f"h0 interval {(lo, hi)} of {V} forces h1 < 0")
    return out


# -- splitting types of the rank-3 degree-6 bundle ------------------------------

REJECTED = "rejected"
UNDECIDED = "undecided"
ACCEPTED = "accepted"


@dataclass(frozen=True)
class SplittingCandidate:
    case: str
    bundle: EllBundle
    twisted: EllBundle
    interval: Interval
    verdict: str

    def __str__(self):
        lo, hi = self.interval
        return f"({self.case}) {self.bundle}: h0 of twist in [{lo},{hi}] -> {self.verdict}"


@dataclass(frozen=True)
class SplittingContext:
    """Lower bounds on summand degrees coming from the defining exact sequence."""

    min_line_degree: int = 1
    min_indec2_degree: int = 2


def _verdict(interval: Interval, threshold: int) -> str:
    if interval[1] < threshold:
        return REJECTED
    if interval[0] >= threshold:
        return ACCEPTED
    return UNDECIDED


def enumerate_splittings(
    rank: int = 3,
    degree: int = 6,
    context: SplittingContext = SplittingContext(),
    threshold: int = 3,
    twist_by: LineBundleClass | None = None,
    group: PointGroup = SHIPPED_GROUP,
    pic0_choices: Sequence[GroupElement] | None = None,
) -> list[SplittingCandidate]:
    """All splitting types with the given rank and degree, judged by ``h0`` of a twist.

    The twist defaults to ``O(-(degree/rank) * 0)``.  Line summands whose twist
    has degree 0 are tried with every label in ``pic0_choices`` (by default the
    torsion points of the group); elsewhere the label cannot change the
    interval and 0 is used.  Labels involving a free generator are allowed and
    typically produce undecided verdicts.
    """
    if rank != 3:
        raise NotImplementedError("only rank-3 splitting types are enumerated")
    if twist_by is None:
        if degree % rank:
            raise ValueError("no default twist for a degree not divisible by the rank")
        twist_by = point_multiple(-(degree // rank), group)
    if pic0_choices is None:
        pic0_choices = group.small_elements(0)
    zero = group.zero()

    def labels_for(d):
        return pic0_choices if d + twist_by.degree == 0 else [zero]

    out: list[SplittingCandidate] = []

    def emit(case, summands):
        V = EllBundle(summands)
        T = twist(V, twist_by)
        iv = h0_interval(T)
        out.append(SplittingCandidate(case, V, T, iv, _verdict(iv, threshold)))

    emit("i", [Indec(3, degree, zero)])
    for w in range(context.min_indec2_degree, degree - context.min_line_degree + 1):
        for lab in labels_for(degree - w):
            emit("ii", [Indec(2, w, zero), Line(LineBundleClass(degree - w, lab))])
    lo = context.min_line_degree
    for d1 in range(lo, degree + 1):
        for d2 in range(d1, degree + 1):
            d3 = degree - d1 - d2
            if d3 < d2:
                continue
            slots = [[(d, lab) for lab in labels_for(d)] for d in (d1, d2, d3)]
            seen = set()
            for choice in itertools.product(*slots):
                key = tuple(sorted((d, lab.coeffs) for d, lab in choice))
                if key in seen:
                    continue
                seen.add(key)
                emit("iii", [Line(LineBundleClass(d, lab)) for d, lab in sorted(choice, key=lambda x: (x[0], x[1].coeffs))])
    return out


def surviving_splittings(candidates: Iterable[SplittingCandidate]) -> list[SplittingCandidate]:
    return [c for c in candidates if c.verdict == ACCEPTED]


def parse_summand(text: str, group: PointGroup = SHIPPED_GROUP) -> Summand:
    """``line deg=2 pic0=2*g0`` or ``indec rank=2 deg=1 [det=t1]``."""
    words = text.split()
    if not words or words[0] not in ("line", "indec"):
        raise ValueError(f"summand must start with 'line' or 'indec': {text!r}")
    opts = {}
    for w in words[1:]:
        key, sep, val = w.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {w!r}")
        opts[key] = val
    allowed = {"line": {"deg", "pic0"}, "indec": {"rank", "deg", "det"}}[words[0]]
    unknown = set(opts) - allowed
    if unknown:
        raise ValueError(f"unknown summand keys {sorted(unknown)}")
    if "deg" not in opts:
        raise ValueError("summand needs deg=")
    if words[0] == "line":
        return Line(LineBundleClass(int(opts["deg"]), group.parse(opts.get("pic0", "0"))))
    return Indec(int(opts.get("rank", 2)), int(opts["deg"]), group.parse(opts.get("det", "0")))
