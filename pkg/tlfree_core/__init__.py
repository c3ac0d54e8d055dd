"""
tlfree Core Module

Exact diagrammatic free probability on Temperley-Lieb planar algebras.
"""

from .exceptions import (
    ArgumentError,
    ConfigurationError,
    ResourceLimitError,
    SingularityError,
    SolverRankError,
    TLFreeError,
    TruncationError,
)

__version__ = "0.1.0"
__all__ = [
    "ArgumentError",
    "ConfigurationError",
    "ResourceLimitError",
    "SingularityError",
    "SolverRankError",
    "TLFreeError",
    "TruncationError",
]
