"""Rank lower bounds for polynomial matrices on a locus, certified by a single minor."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import PreconditionError
from .poly import Poly, determinant, evaluate, substitute, symbol_key


@dataclass(frozen=True)
class AssumptionSet:
    """Symbols known to be nonzero, plus generators of the locus under study.

    Locus generators must be unit multiples of single symbols; reduction on
    the locus substitutes those symbols by zero.
    """

    nonzero: frozenset[str] = frozenset()
    vanishing: tuple[Poly, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nonzero", frozenset(self.nonzero))
        object.__setattr__(self, "vanishing", tuple(Poly.coerce(v) for v in self.vanishing))
        for gen in self.vanishing:
            if len(gen.terms) != 1 or len(gen.symbols) != 1 or sum(next(iter(gen.terms))) != 1:
                raise PreconditionError(f"locus generator {gen} is not a multiple of a single symbol")
        clash = self.nonzero & self.zero_symbols
        if clash:
            raise PreconditionError(f"symbols both nonzero and vanishing: {sorted(clash)}")

    @classmethod
    def of(cls, nonzero: Iterable[str] = (), zero: Iterable[str] = ()) -> "AssumptionSet":
        return cls(frozenset(nonzero), tuple(Poly.var(s) for s in zero))

    @property
    def zero_symbols(self) -> frozenset[str]:
        out = set()
        for gen in self.vanishing:
            out |= gen.symbols
        return frozenset(out)

    def reduce(self, p: Poly) -> Poly:
        zeros = {s: 0 for s in self.zero_symbols if s in p.gens}
        return substitute(p, zeros) if zeros else p

    def certifies_nonzero(self, p: Poly) -> bool:
        """True when ``p`` reduces to a single term built from nonzero-marked symbols."""
        r = self.reduce(p)
        return len(r.terms) == 1 and r.symbols <= self.nonzero


@dataclass
class RankCertificate:
    certified: bool
    rank: int
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()
    minor: Poly | None = None
    reduced: Poly | None = None
    assumptions: AssumptionSet = field(default_factory=AssumptionSet)

    def __bool__(self):
        return self.certified

    def describe(self, col_labels: Sequence[str] | None = None) -> str:
        if not self.certified:
            return f"rank >= {self.rank} not certified"
        cols = [col_labels[c] for c in self.cols] if col_labels else list(self.cols)
        return f"rank >= {self.rank}: rows {list(self.rows)}, columns {cols}, minor {self.reduced}"

    def reverify(self, seed: int = 0, trials: int = 5) -> bool:
        """Evaluate the raw minor at random points of the locus; every value must be nonzero."""
        if not self.certified:
            return False
        rng = random.Random(seed)
        zeros = self.assumptions.zero_symbols
        syms = sorted(self.minor.symbols, key=symbol_key)
        for _ in range(trials):
            values = {}
            for s in syms:
                if s in zeros:
                    values[s] = Fraction(0)
                else:
                    values[s] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 97), rng.randint(1, 13))
            if evaluate(self.minor, values) == 0:
                return False
        return True


def rank_lower_bound_certificate(M: Sequence[Sequence[Poly]], assume: AssumptionSet, r: int) -> RankCertificate:
    """Search ``r x r`` minors (row-major order) for one that is provably nonzero on the locus."""
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    if r < 1 or r > min(nrows, ncols):
        raise PreconditionError(f"cannot certify rank {r} for a {nrows}x{ncols} matrix")
    for rows in itertools.combinations(range(nrows), r):
        for cols in itertools.combinations(range(ncols), r):
            minor = determinant([[Poly.coerce(M[i][j]) for j in cols] for i in rows])
            if assume.certifies_nonzero(minor):
                return RankCertificate(True, r, rows, cols, minor, assume.reduce(minor), assume)
    return RankCertificate(False, r, assumptions=assume)
