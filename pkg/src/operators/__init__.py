"""
Operators package for trdiff.

Face fluxes, exchange sources and the assembled semi-discrete operator.
"""

from src.operators.flux import effective_conductivity, face_conductivity, face_flux, face_regions
from src.operators.source import cell_gradient, cell_gradients, cell_source, minmod
from src.operators.spatial import (
    SemiDiscreteProblem, assemble_rhs, flux_divergence, spatial_operator
)

__all__ = [
    "effective_conductivity", "face_conductivity", "face_flux", "face_regions",
    "cell_gradient", "cell_gradients", "cell_source", "minmod",
    "SemiDiscreteProblem", "assemble_rhs", "flux_divergence", "spatial_operator",
]
