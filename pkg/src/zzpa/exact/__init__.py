"""Exact polynomial algebra, real root isolation and arithmetic in Q(lambda)."""

from .field import FieldContext, FieldElement, UndecidedError
from .poly import (Poly, companion_polynomial, cyclotomic, expand_companion,
                   has_cyclotomic_factor, poly_gcd, strip_cyclotomic_factors)
from .roots import AlgebraicReal, compare_reals, isolate_real_roots, perron_root, sturm_count

__all__ = [
    "AlgebraicReal", "FieldContext", "FieldElement", "Poly", "UndecidedError",
    "compare_reals", "companion_polynomial", "cyclotomic", "expand_companion", "has_cyclotomic_factor",
    "isolate_real_roots", "perron_root", "poly_gcd", "strip_cyclotomic_factors", "sturm_count",
]
