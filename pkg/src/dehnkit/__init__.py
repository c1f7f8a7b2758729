"""Exact computations for Dehn surgery descriptions of knots: slope
arithmetic, linking-form and Casson-Walker obstructions, d-invariants,
torus-knot Seifert data, twist-family Alexander polynomials and a certified
search for strongly characterising slopes."""

from .arith import Slope, normalize_slope
from .errors import DomainError

__all__ = ["Slope", "normalize_slope", "DomainError"]
__version__ = "0.1.0"
