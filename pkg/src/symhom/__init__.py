"""Exact homology of simplicial and cubical sets with symmetries."""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import ContractViolation, InvalidInput, ResourceCapError, SymhomError
from .exact_linalg import ExactMatrix, HomologyGroup, homology_of_pair, snf
from .chain_modules import (
    Chain,
    ComplexRep,
    complex_of,
    cubical_complex_of,
    free_linear,
    homology,
    simplicial_complex_of,
)

__all__ = [
    "__version__",
    "Chain",
    "ComplexRep",
    "ContractViolation",
    "ExactMatrix",
    "HomologyGroup",
    "InvalidInput",
    "ResourceCapError",
    "SymhomError",
    "complex_of",
    "cubical_complex_of",
    "free_linear",
    "homology",
    "homology_of_pair",
    "simplicial_complex_of",
    "snf",
]
