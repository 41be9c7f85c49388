"""Exact computations with modular and graded Lie algebras.

Structure constants over F_p or Q, simplicity certificates, derivation
algebras, low-degree cohomology, universal central extensions, and Cartan
type algebras built from truncated polynomial vector fields.
"""

from .exact import GF, QQ, Subspace
from .lie import (LieAlgebra, LieAlgebraError, center, derived_subalgebra, is_perfect, quotient, subalgebra,
                  validate)
from .simplicity import SimplicityCertificate, SimplicityUndecided, is_simple
from .derivations import derivation_algebra, is_complete, outer_representatives
from .cohomology import adjoint_module, graded_h2_trivial, h1, h2, h2_homology_dim, trivial_module
from .extensions import (central_extension, covering_dimensions, is_covering, lift_derivation,
                         out_action_on_center, predict_der_simple, stabilizer, uce, verify_der_simple)
from . import catalog

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Subspace", "LieAlgebra", "LieAlgebraError", "center", "derived_subalgebra", "is_perfect",
    "quotient", "subalgebra", "validate", "SimplicityCertificate", "SimplicityUndecided", "is_simple",
    "derivation_algebra", "is_complete", "outer_representatives", "adjoint_module", "graded_h2_trivial", "h1",
    "h2", "h2_homology_dim", "trivial_module", "central_extension", "covering_dimensions", "is_covering",
    "lift_derivation", "out_action_on_center", "predict_der_simple", "stabilizer", "uce", "verify_der_simple",
    "catalog", "__version__",
]
