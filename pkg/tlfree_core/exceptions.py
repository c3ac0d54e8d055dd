"""
Custom exceptions for tlfree.
Provides a hierarchy of exceptions for different error types.
"""


class TLFreeError(Exception):
    """Base exception for all tlfree errors."""
    pass

# Input Exceptions
class ArgumentError(TLFreeError):
    """Raised when an operation receives malformed or incompatible input."""
    pass

class SerializationError(ArgumentError):
    """Raised when data cannot be serialized/deserialized."""
    pass

class NonTracialError(ArgumentError):
    """Raised when trace data is not invariant under two-click rotation."""
    pass

class ConfigurationError(TLFreeError):
    """Raised when configuration values are invalid."""
    pass

# Resource Exceptions
class ResourceLimitError(TLFreeError):
    """Raised when a configured cap would be exceeded."""
    pass

class TruncationError(ResourceLimitError):
    """Raised when an evaluation needs data beyond the truncation depth."""
    pass

# Algebra Exceptions
class SingularityError(TLFreeError):
    """Raised when a denominator vanishes at a numeric specialization."""
    pass

class SolverRankError(TLFreeError):
    """Raised when a linear system is rank deficient or inconsistent."""

    def __init__(self, message: str, order=None, nullity: int = 0):
        super().__init__(message)
        self.order = order
        self.nullity = nullity
