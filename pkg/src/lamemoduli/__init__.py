"""Exact and numerical laboratory for the moduli of Lame functions."""

from .mpoly import MPoly, NonDivisible, PolyMatrix, Q, UPoly, parse, rat
from .algebra import (
    DegreeTooSmall,
    NotQuasiHomogeneous,
    NotSymmetric,
    char_poly,
    discriminant,
    primitive_normalize,
    resultant,
    squarefree_decompose,
    symmetric_reduce,
    weighted_degree,
)

__all__ = [
    "MPoly",
    "UPoly",
    "PolyMatrix",
    "Q",
    "parse",
    "rat",
    "NonDivisible",
    "DegreeTooSmall",
    "NotQuasiHomogeneous",
    "NotSymmetric",
    "char_poly",
    "discriminant",
    "primitive_normalize",
    "resultant",
    "squarefree_decompose",
    "symmetric_reduce",
    "weighted_degree",
]

__version__ = "0.1.0"
