"""
Reconstruction package for trdiff.

Normal (1D) central GENO, tangential (2D) constrained least-squares GENO,
boundary-face formulas and whole-grid face reconstruction.
"""

from src.reconstruction.boundary import reconstruct_boundary_dirichlet, reconstruct_boundary_neumann
from src.reconstruction.faces import FaceReconstruction, reconstruct_all_faces, reconstruct_axis
from src.reconstruction.geno1d import (
    CENTRAL2, GENO, LINEAR4, SCHEMES, check_scheme, path_chi, reconstruct_face_1d,
    smoothness_1d, smoothness_alpha
)
from src.reconstruction.geno2d import (
    GAUSS_POINTS, N_QUAD, STENCIL_OFFSETS, constrained_least_squares, eno2,
    mean_matrix, reconstruct_face_2d
)

__all__ = [
    "reconstruct_boundary_dirichlet", "reconstruct_boundary_neumann",
    "FaceReconstruction", "reconstruct_all_faces", "reconstruct_axis",
    "CENTRAL2", "GENO", "LINEAR4", "SCHEMES", "check_scheme", "path_chi",
    "reconstruct_face_1d", "smoothness_1d", "smoothness_alpha",
    "GAUSS_POINTS", "N_QUAD", "STENCIL_OFFSETS", "constrained_least_squares", "eno2",
    "mean_matrix", "reconstruct_face_2d",
]
