"""Exact tropical division and Minkowski factorization of lattice polytopes.

The package computes with tropical polynomials over the max-plus semiring,
regular subdivisions and their dual weighted complexes, Minkowski summands
of lattice polytopes, deformation cones of generalized permutahedra, and
Coxeter permutahedra of type A and B2.  All arithmetic is exact: integers,
fractions.Fraction, and the quadratic extension Q(sqrt(2)).
"""

from tropfactor.exact import Fraction, QuadExt, TropfactorError
from tropfactor.tropical import TropicalPolynomial, is_balanced
from tropfactor.polyhedra import Fan, LatticePolytope, Polyhedron
from tropfactor.division import (
    divide,
    reconstruct_from_fan,
    variety_contained,
)
from tropfactor.minkowski import (
    FactorizationBasis,
    WeightVector,
    expand_in_basis,
    factor,
    has_scaled_summand,
    is_indecomposable,
    is_summand,
    polytope_weights,
    weight_cone_basis,
)
from tropfactor.permutahedra import (
    deformation_cone_contains,
    deformation_cone_violations,
    polymatroid_from_weights,
    weight_matrix,
)
from tropfactor.coxeter import (
    build_root_system,
    coxeter_fan,
    phi_expand,
    phi_permutahedron,
    phi_weight_cone_basis,
    phi_weights,
    reconstruct_phi,
)

__version__ = "1.0.0"

__all__ = [
    "Fraction",
    "QuadExt",
    "TropfactorError",
    "TropicalPolynomial",
    "is_balanced",
    "Fan",
    "LatticePolytope",
    "Polyhedron",
    "divide",
    "reconstruct_from_fan",
    "variety_contained",
    "FactorizationBasis",
    "WeightVector",
    "expand_in_basis",
    "factor",
    "has_scaled_summand",
    "is_indecomposable",
    "is_summand",
    "polytope_weights",
    "weight_cone_basis",
    "deformation_cone_contains",
    "deformation_cone_violations",
    "polymatroid_from_weights",
    "weight_matrix",
    "build_root_system",
    "coxeter_fan",
    "phi_expand",
    "phi_permutahedron",
    "phi_weight_cone_basis",
    "phi_weights",
    "reconstruct_phi",
    "__version__",
]
