"""Scalar laws: moments, free cumulants and their conversions."""
from .law import (
    NAMED_LAWS,
    CumulantSeq,
    MomentSeq,
    convolution_power,
    cumulants_to_moments,
    divisibility_check,
    hankel_matrix,
    law_from_json,
    mixed_cumulant,
    moments_to_cumulants,
    named_law,
    projection_moment,
)

__all__ = [
    "NAMED_LAWS", "CumulantSeq", "MomentSeq", "convolution_power", "cumulants_to_moments",
    "divisibility_check", "hankel_matrix", "law_from_json", "mixed_cumulant",
    "moments_to_cumulants", "named_law", "projection_moment",
]
