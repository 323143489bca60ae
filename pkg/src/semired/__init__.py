"""Exact computations for semi-reductive Lie algebras g = g0 + u."""

from .fields import QQ, GF, Field, Residue
from .matrix import Matrix, solve_linear_system, kernel_basis
from .polynomial import MultiPoly, char_poly, min_poly, squarefree_part
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "QQ", "GF", "Field", "Residue",
    "Matrix", "solve_linear_system", "kernel_basis",
    "MultiPoly", "char_poly", "min_poly", "squarefree_part",
    "SplitMix64",
]
