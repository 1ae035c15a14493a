"""Sparse multivariate polynomials with rational coefficients.

A polynomial lives in the ring generated by its declared symbols ``gens``
(kept in natural order, so ``a2 < a10``).  Terms map exponent vectors over
``gens`` to nonzero ``Fraction`` coefficients.  Arithmetic between
polynomials over different symbol sets happens in the union ring.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import SymbolError

_SYMBOL_RE = re.compile(r"^[a-z][a-z0-9_]*$")


def symbol_key(name: str):
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name) if part)


def _sorted_gens(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=symbol_key))


class Poly:
    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens: Iterable[str] = (), terms: Mapping[tuple[int, ...], object] | None = None):
        gens = tuple(gens)
        if _sorted_gens(gens) != gens:
            raise ValueError(f"generators must be distinct and in natural order: {gens}")
        for g in gens:
            if not _SYMBOL_RE.match(g):
                raise SymbolError(f"invalid symbol name {g!r}")
        self.gens = gens
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c and len(exps) == len(gens):
                clean[tuple(exps)] = c
            elif c:
                raise ValueError("exponent vector length does not match generators")
        self.terms: dict[tuple[int, ...], Fraction] = clean
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def const(cls, c, gens: Iterable[str] = ()) -> "Poly":
        gens = _sorted_gens(gens)
        return cls(gens, {(0,) * len(gens): c})

    @classmethod
    def var(cls, name: str, gens: Iterable[str] = ()) -> "Poly":
        gens = _sorted_gens(set(gens) | {name})
        exps = tuple(1 if g == name else 0 for g in gens)
        return cls(gens, {exps: 1})

    def with_gens(self, gens: Iterable[str]) -> "Poly":
        """The same polynomial viewed in a ring with (at least) the given symbols."""
        new = _sorted_gens(set(gens) | set(self.gens))
        if new == self.gens:
            return self
        index = [new.index(g) for g in self.gens]
        terms = {}
        for exps, c in self.terms.items():
            e = [0] * len(new)
            for i, k in zip(index, exps):
                e[i] = k
            terms[tuple(e)] = c
        return Poly(new, terms)

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    @property
    def symbols(self) -> frozenset[str]:
        """Symbols that actually occur in some term."""
        used = set()
        for exps in self.terms:
            used.update(g for g, e in zip(self.gens, exps) if e)
        return frozenset(used)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def total_degree(self, symbols: Iterable[str] | None = None) -> int:
        if not self.terms:
            return -1
        mask = self._mask(symbols)
        return max(sum(e for e, keep in zip(exps, mask) if keep) for exps in self.terms)

    def is_homogeneous(self, symbols: Iterable[str], degree: int | None = None) -> bool:
        mask = self._mask(symbols)
        degs = {sum(e for e, keep in zip(exps, mask) if keep) for exps in self.terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def _mask(self, symbols):
        if symbols is None:
            return [True] * len(self.gens)
        symbols = set(symbols)
        return [g in symbols for g in self.gens]

    def is_monomial_term(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        p = self.with_gens(monomial)
        exps = tuple(monomial.get(g, 0) for g in p.gens)
        return p.terms.get(exps, Fraction(0))

    def coeff_in(self, symbols: Iterable[str]) -> dict[tuple[int, ...], "Poly"]:
        """Split by exponents of ``symbols``: ``{exps: coefficient polynomial}``."""
        symbols = tuple(symbols)
        p = self.with_gens(symbols)
        idx = [p.gens.index(s) for s in symbols]
        rest = [i for i in range(len(p.gens)) if i not in idx]
        out: dict[tuple[int, ...], dict] = {}
        for exps, c in p.terms.items():
            key = tuple(exps[i] for i in idx)
            sub = tuple(exps[i] if i in rest else 0 for i in range(len(p.gens)))
            out.setdefault(key, {})[sub] = c
        return {k: Poly(p.gens, v) for k, v in out.items()}

    # -- arithmetic ---------------------------------------------------------

    def _unify(self, other) -> tuple["Poly", "Poly"]:
        other = Poly.coerce(other)
        if other.gens == self.gens:
            return self, other
        gens = set(self.gens) | set(other.gens)
        return self.with_gens(gens), other.with_gens(gens)

    def __add__(self, other):
        try:
            a, b = self._unify(other)
        except TypeError:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(a.gens, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        try:
            a, b = self._unify(other)
        except TypeError:
            return NotImplemented
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(a.gens, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1, self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._unify(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            items = []
            for exps, c in self.terms.items():
                items.append((tuple((g, e) for g, e in zip(self.gens, exps) if e), c))
            self._hash = hash(frozenset(items))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for exps, c in p.sorted_terms():
        mono = "*".join(g if e == 1 else f"{g}^{e}" for g, e in zip(p.gens, exps) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(pieces)


def differentiate(p: Poly, var: str) -> Poly:
    """Formal partial derivative; every other symbol is treated as a constant."""
    if var not in p.gens:
        raise SymbolError(f"symbol {var!r} is not declared in the ring of {p}")
    i = p.gens.index(var)
    terms = {}
    for exps, c in p.terms.items():
        if exps[i]:
            e = list(exps)
            e[i] -= 1
            terms[tuple(e)] = c * exps[i]
    return Poly(p.gens, terms)


def apply_ring_map(p: Poly, mapping: Mapping[str, object]) -> Poly:
    """Substitution homomorphism; symbols missing from ``mapping`` are fixed."""
    images = []
    for g in p.gens:
        img = mapping.get(g)
        images.append(Poly.var(g) if img is None else Poly.coerce(img))
    powers: dict[tuple[int, int], Poly] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    result = Poly.const(0)
    for exps, c in p.terms.items():
        term = Poly.const(c)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def substitute(p: Poly, values: Mapping[str, object]) -> Poly:
    """Like :func:`apply_ring_map`, but the result keeps the symbols of ``p`` declared."""
    out = apply_ring_map(p, values)
    keep = [g for g in p.gens if g not in values]
    return out.with_gens(keep)


def evaluate(p: Poly, values: Mapping[str, object]) -> Fraction:
    missing = p.symbols - set(values)
    if missing:
        raise SymbolError(f"no value for {sorted(missing, key=symbol_key)}")
    total = Fraction(0)
    for exps, c in p.terms.items():
        term = c
        for g, e in zip(p.gens, exps):
            if e:
                term *= Fraction(values[g]) ** e
        total += term
    return total


def jacobian(fs: Iterable[Poly], vars: Iterable[str]) -> list[list[Poly]]:
    vars = list(vars)
    rows = []
    for f in fs:
        f = Poly.coerce(f).with_gens(vars)
        rows.append([differentiate(f, v) for v in vars])
    return rows


def determinant(matrix: list[list[Poly]]) -> Poly:
    """Leibniz expansion; intended for the small minors used by certificates."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    total = Poly.const(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Poly.const(sign)
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
            if term.is_zero():
                break
        total = total + term
    return total
