"""Simplicial resolutions of powers of square-free monomial ideals."""

from .errors import InfeasibleError
from .linalg import QQ, Field
from .monomial import ExponentPoint, Monomial, MonomialIdeal, VariableSet, divides, lcm, minimalize, power_product
from .simplicial import SimplicialComplex, from_facets, reduced_homology

__version__ = "0.1.0"

__all__ = [
    "ExponentPoint",
    "Field",
    "InfeasibleError",
    "Monomial",
    "MonomialIdeal",
    "QQ",
    "SimplicialComplex",
    "VariableSet",
    "divides",
    "from_facets",
    "lcm",
    "minimalize",
    "power_product",
    "reduced_homology",
]
