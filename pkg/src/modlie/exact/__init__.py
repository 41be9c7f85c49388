"""Exact fields and linear algebra over F_p and Q."""

from .fields import GF, QQ, Field, FieldError, PrimeField, RationalField, field_from_spec, is_prime, scalar_inv
from .linalg import Echelon, Matrix, inverse, kernel_basis, rank, rref, solve, sparse_rref
from .subspace import (Subspace, kernel, quotient_map, spin, subspace_contains, subspace_intersect,
                       subspace_sum)

__all__ = [
    "GF", "QQ", "Field", "FieldError", "PrimeField", "RationalField", "field_from_spec", "is_prime",
    "scalar_inv", "Echelon", "Matrix", "inverse", "kernel_basis", "rank", "rref", "solve",
    "sparse_rref", "Subspace", "kernel", "quotient_map", "spin", "subspace_contains",
    "subspace_intersect", "subspace_sum",
]
