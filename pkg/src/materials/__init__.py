"""
Materials package for trdiff.

Coefficient laws and the built-in material models.
"""

from src.materials.laws import EnergyLaw, PowerLaw
from src.materials.models import (
    BUILTIN_MODELS, ICF_REGIONS, PAIRS, ICFRegionConstants, MaterialModel,
    custom_model, get_material_model, icf_classifier, icf_model,
    linear_mms_model, model2d_classifier, model2d_model
)

__all__ = [
    "EnergyLaw", "PowerLaw",
    "BUILTIN_MODELS", "ICF_REGIONS", "PAIRS", "ICFRegionConstants", "MaterialModel",
    "custom_model", "get_material_model", "icf_classifier", "icf_model",
    "linear_mms_model", "model2d_classifier", "model2d_model",
]
