"""Picard lattice of the plane blown up at ``n`` points in general position.

A class is stored as ``D = d*L - sum(m_i * E_i)``: the exceptional curve
``E_i`` itself is therefore the vector with ``m_i = -1``.  With that sign
convention the intersection form is a signed dot product,
``D.D' = d*d' - sum(m_i * m'_i)``.

Exceptional curves are labelled from 1, as in ``E_1 .. E_n``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, LatticeIndexError, ParityError


@dataclass(frozen=True)
class SurfaceLattice:
    n_blowups: int

    def __post_init__(self):
        if self.n_blowups < 0:
            raise ValueError("n_blowups must be nonnegative")

    @property
    def rank(self) -> int:
        return 1 + self.n_blowups

    def gram_matrix(self) -> list[list[int]]:
        n = self.rank
        return [[(1 if i == 0 else -1) if i == j else 0 for j in range(n)] for i in range(n)]

    def line(self) -> "DivisorClass":
        return DivisorClass(1, (0,) * self.n_blowups)

    def exceptional(self, i: int) -> "DivisorClass":
        _check_index(i, self.n_blowups)
        m = [0] * self.n_blowups
        m[i - 1] = -1
        return DivisorClass(0, tuple(m))

    def zero(self) -> "DivisorClass":
        return DivisorClass(0, (0,) * self.n_blowups)

    def basis(self) -> list["DivisorClass"]:
        return [self.line()] + [self.exceptional(i) for i in range(1, self.n_blowups + 1)]


_CLASS_RE = re.compile(r"^\(?\s*(-?\d+)\s*;\s*([-\d,\s]*)\)?$")


@dataclass(frozen=True, order=True)
class DivisorClass:
    """Integer class ``(d; m_1, ..., m_n)``; equality is linear equivalence."""

    d: int
    m: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        """Read ``"(5;3,3,3,-1)"`` or ``"5; 3 3 3 -1"``."""
        match = _CLASS_RE.match(text.strip().replace("−", "-"))
        if not match:
            raise ValueError(f"not a divisor class: {text!r}")
        body = match.group(2).replace(",", " ").split()
        return cls(int(match.group(1)), tuple(int(x) for x in body))

    @property
    def n(self) -> int:
        return len(self.m)

    @property
    def lattice(self) -> SurfaceLattice:
        return SurfaceLattice(self.n)

    def as_tuple(self) -> tuple[int, ...]:
        return (self.d,) + self.m

    def _same(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"classes live on lattices of rank {1 + self.n} and {1 + other.n}")
        return None

    def __add__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.d - other.d, tuple(a - b for a, b in zip(self.m, other.m)))

    def __neg__(self):
        return DivisorClass(-self.d, tuple(-a for a in self.m))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(k * self.d, tuple(k * a for a in self.m))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.d == 0 and not any(self.m)

    def __str__(self):
        return f"({self.d};{','.join(str(x) for x in self.m)})"


def _check_index(i, n):
    if not isinstance(i, int) or not 1 <= i <= n:
        raise LatticeIndexError(f"blowup index {i!r} outside 1..{n}")


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    if a.n != b.n:
        raise DimensionError(f"classes live on lattices of rank {1 + a.n} and {1 + b.n}")
    return a.d * b.d - sum(x * y for x, y in zip(a.m, b.m))


def canonical_class(lat: SurfaceLattice) -> DivisorClass:
    return DivisorClass(-3, (-1,) * lat.n_blowups)


def adjunction_genus(D: DivisorClass) -> int:
    """Arithmetic genus ``1 + D.(D+K)/2``."""
    twice = intersect(D, D + canonical_class(D.lattice))
    assert twice % 2 == 0, f"D.(D+K) odd for {D}"
    return 1 + twice // 2


def halve(D: DivisorClass) -> DivisorClass:
    if D.d % 2 or any(x % 2 for x in D.m):
        raise ParityError(f"{D} is not divisible by 2 in the Picard lattice")
    return DivisorClass(D.d // 2, tuple(x // 2 for x in D.m))


def cremona_quadratic(D: DivisorClass, base: Iterable[int]) -> DivisorClass:
    """Image of ``D`` under the standard quadratic transformation centred at three blown-up points.

    ``d' = 2d - m_i - m_j - m_k`` and ``m'_i = d - m_j - m_k`` cyclically; the
    remaining multiplicities are unchanged.
    """
    base = tuple(base)
    if len(base) != 3 or len(set(base)) != 3:
        raise LatticeIndexError(f"base must be three distinct indices, got {base!r}")
    for i in base:
        _check_index(i, D.n)
    i, j, k = (x - 1 for x in base)
    mi, mj, mk = D.m[i], D.m[j], D.m[k]
    m = list(D.m)
    m[i] = D.d - mj - mk
    m[j] = D.d - mi - mk
    m[k] = D.d - mi - mj
    return DivisorClass(2 * D.d - mi - mj - mk, tuple(m))


def leading_minors(gram: Sequence[Sequence[int]]) -> list[int]:
    """Determinants of the leading principal minors, computed exactly."""
    from .linalg import det

    return [det([row[:k] for row in gram[:k]]) for k in range(1, len(gram) + 1)]
