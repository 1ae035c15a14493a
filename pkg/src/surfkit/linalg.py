"""Exact dense linear algebra over the rationals.

Rows are sequences of ``int`` or ``Fraction``.  Rank is computed by
fraction-free elimination on integer rows (each rational row is first scaled
by the lcm of its denominators), which keeps the interpolation sweeps fast
without giving up exactness.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Number = int | Fraction


def _integer_row(row: Sequence[Number]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                return row
    if g > 1:
        return [a // g for a in row]
    return row


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a row space.

    ``add`` reduces a new row against the basis and keeps it if it is
    independent; the return value says whether the rank grew.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Sequence[Number]) -> bool:
        if len(row) != self.ncols:
            raise ValueError(f"row of length {len(row)} added to basis with {self.ncols} columns")
        work = _integer_row(row)
        for c in range(self.ncols):
            v = work[c]
            if v == 0:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                self.pivots[c] = _primitive(work)
                return True
            pc = piv[c]
            work = _primitive([pc * a - v * b for a, b in zip(work, piv)])
        return False


def rank(rows: Sequence[Sequence[Number]], ncols: int | None = None) -> int:
    if ncols is None:
        if not rows:
            return 0
        ncols = len(rows[0])
    basis = EchelonBasis(ncols)
    for row in rows:
        basis.add(row)
        if basis.rank == ncols:
            break
    return basis.rank


def nullity(rows: Sequence[Sequence[Number]], ncols: int) -> int:
    return ncols - rank(rows, ncols)


def rref(rows: Sequence[Sequence[Number]], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Reduced row echelon form with the zero rows removed."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    mat = [[Fraction(x) for x in row] for row in rows]
    out: list[list[Fraction]] = []
    for c in range(ncols):
        pivot = next((r for r in mat if r[c] != 0), None)
        if pivot is None:
            continue
        mat.remove(pivot)
        pivot = [x / pivot[c] for x in pivot]
        mat = [[a - r[c] * b for a, b in zip(r, pivot)] for r in mat]
        out = [[a - r[c] * b for a, b in zip(r, pivot)] for r in out]
        out.append(pivot)
    return [tuple(r) for r in out]


def det(matrix: Sequence[Sequence[Number]]) -> Fraction:
    """Determinant by Gaussian elimination over ``Fraction``."""
    mat = [[Fraction(x) for x in row] for row in matrix]
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("det needs a square matrix")
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if mat[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            mat[c], mat[p] = mat[p], mat[c]
            result = -result
        result *= mat[c][c]
        for r in range(c + 1, n):
            f = mat[r][c] / mat[c][c]
            if f:
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
    return result


def format_matrix(rows: Sequence[Sequence[Number]]) -> str:
    """Plain-text rendering, one row per line, entries as reduced fractions."""
    cells = [[str(Fraction(x)) for x in row] for row in rows]
    if not cells:
        return "(empty)"
    width = max(len(c) for row in cells for c in row) if any(cells) else 1
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
