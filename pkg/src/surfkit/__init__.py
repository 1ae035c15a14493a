"""Exact computations on the plane blown up at four points and related objects.

Submodules: ``lattice`` (Picard lattice), ``delpezzo`` (effectivity, h0),
``bidouble`` (cover invariants), ``symalg`` (sparse polynomials),
``logforms``, ``ellbundle``, ``conic``, plus ``scenario``/``verify``/``cli``.
"""
from .lattice import DivisorClass, SurfaceLattice

__version__ = "0.1.0"
__all__ = ["DivisorClass", "SurfaceLattice", "__version__"]
