"""Discrete Yang-Mills fields on a four-dimensional Minkowski lattice.

The lattice is the tensor product of four 1D cell complexes; forms are
2x2-matrix-valued cochains, exact over Q(i) or in complex floating point.
"""

from .cochains import Cochain, coboundary, cup, translate
from .errors import ModeError, PreconditionError, SingularMatrixError
from .gauge import (
    GaugeZeroForm,
    bianchi_residual,
    conjugate,
    covariant_differential,
    curvature,
    gauge_transform_connection,
    make_diagonal_gauge,
    satisfies_diagonal_condition,
    ym_residual,
)
from .hodge import double_star, star, star_inverse
from .inner_product import codifferential, covariant_codifferential, inner, ym_laplacian
from .lattice_complex import Box, Chain, boundary, volume_chain
from .matrix_algebra import EXACT, FLOAT, GaussianRational, Matrix2, lie_basis, matrix
from .selfdual import DualityMode, duality_residual, finite_support_triviality

__version__ = "0.1.0"

__all__ = [
    "Box", "Chain", "Cochain", "DualityMode", "EXACT", "FLOAT", "GaugeZeroForm", "GaussianRational",
    "Matrix2", "ModeError", "PreconditionError", "SingularMatrixError", "bianchi_residual", "boundary",
    "coboundary", "codifferential", "conjugate", "covariant_codifferential", "covariant_differential",
    "cup", "curvature", "double_star", "duality_residual", "finite_support_triviality",
    "gauge_transform_connection", "inner", "lie_basis", "make_diagonal_gauge", "matrix",
    "satisfies_diagonal_condition", "star", "star_inverse", "translate", "volume_chain", "ym_laplacian",
    "ym_residual",
]
