from .certificates import AssumptionSet, RankCertificate, rank_lower_bound_certificate
from .parser import parse_poly
from .poly import (
    Poly,
    apply_ring_map,
    determinant,
    differentiate,
    evaluate,
    format_poly,
    jacobian,
    substitute,
    symbol_key,
)

__all__ = [
    "AssumptionSet",
    "Poly",
    "RankCertificate",
    "apply_ring_map",
    "determinant",
    "differentiate",
    "evaluate",
    "format_poly",
    "jacobian",
    "parse_poly",
    "rank_lower_bound_certificate",
    "substitute",
    "symbol_key",
]
