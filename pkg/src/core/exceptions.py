# src/core/exceptions.py

"""
Custom exception classes for the application
Provides structured error handling with error codes
"""

from typing import Optional


class AppException(Exception):
    """
    Base exception for all application errors
    All custom exceptions should inherit from this class
    """

    def __init__(self, message: str, error_code: str = "APP_ERROR"):
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)

    def __str__(self):
        return f"[{self.error_code}] {self.message}"

    def __repr__(self):
        return f"{self.__class__.__name__}(message={self.message!r}, error_code={self.error_code!r})"


# ============================================================================
# Validation Exceptions
# ============================================================================

class ValidationError(AppException):
    """Raised when an operand fails validation"""

    def __init__(self, message: str = "Validation failed", field: Optional[str] = None):
        if field:
            message = f"Validation failed for '{field}': {message}"
        super().__init__(message, "VALIDATION_ERROR")


class DimensionMismatchError(ValidationError):
    """Raised when matrix or vector sizes disagree with the declared dimensions"""

    def __init__(self, expected: object, actual: object, field: Optional[str] = None):
        super().__init__(f"dimension mismatch: expected {expected}, got {actual}", field)
        self.error_code = "DIMENSION_MISMATCH"


class NotHermitianError(ValidationError):
    """Raised when a matrix is not Hermitian within tolerance"""

    def __init__(self, deviation: float, tolerance: float):
        super().__init__(
            f"matrix is not Hermitian: max deviation {deviation:.3e} exceeds {tolerance:.3e}"
        )
        self.error_code = "NOT_HERMITIAN"


class NotNormalizedError(ValidationError):
    """Raised when a state vector or density matrix is not normalized"""

    def __init__(self, norm: float):
        super().__init__(f"input is not normalized (norm or trace {norm:.12g})")
        self.error_code = "NOT_NORMALIZED"


class NotAStateError(ValidationError):
    """Raised when a matrix is not a density operator"""

    def __init__(self, message: str = "input is not a density operator"):
        super().__init__(message)
        self.error_code = "NOT_A_STATE"


class InvalidParameterError(ValidationError):
    """Raised when a scalar parameter is outside its admissible range"""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message, field)
        self.error_code = "INVALID_PARAMETER"


# ============================================================================
# Channel Exceptions
# ============================================================================

class ChannelError(AppException):
    """Raised when a channel violates a structural requirement"""

    def __init__(self, message: str = "Channel error"):
        super().__init__(message, "CHANNEL_ERROR")


class MissingRepresentationError(ChannelError):
    """Raised when an operation needs a representation the channel does not carry"""

    def __init__(self, representation: str):
        super().__init__(f"channel has no {representation} representation")
        self.error_code = "MISSING_REPRESENTATION"


class NotCompletelyPositiveError(ChannelError):
    """Raised when a Choi operator has a negative eigenvalue"""

    def __init__(self, min_eigenvalue: Optional[float] = None):
        message = "not completely positive"
        if min_eigenvalue is not None:
            message = f"{message} (minimal Choi eigenvalue {min_eigenvalue:.6g})"
        super().__init__(message)
        self.error_code = "NOT_COMPLETELY_POSITIVE"


class NotTracePreservingError(ChannelError):
    """Raised when a Kraus set violates sum K^dag K = I"""

    def __init__(self, deviation: float):
        super().__init__(f"Kraus operators are not trace preserving (deviation {deviation:.3e})")
        self.error_code = "NOT_TRACE_PRESERVING"


class NotPositiveMapError(ChannelError):
    """Raised when a map sends some state to a non-positive operator"""

    def __init__(self, value: float):
        super().__init__(f"map is not positive (product expectation {value:.6g})")
        self.error_code = "NOT_POSITIVE_MAP"


# ============================================================================
# Decision Exceptions
# ============================================================================

class PreconditionError(AppException):
    """Raised when a decision procedure is applied outside its validity range"""

    def __init__(self, message: str = "Precondition not met"):
        super().__init__(message, "PRECONDITION_ERROR")


class SeparabilityUndecidableError(PreconditionError):
    """Raised when PPT does not decide separability for the given dimensions"""

    def __init__(self, d_a: int, d_b: int):
        super().__init__(f"separability undecidable by PPT here ({d_a}x{d_b} > 6)")
        self.error_code = "SEPARABILITY_UNDECIDABLE"


class ProportionRequirementError(PreconditionError):
    """Raised when the ancilla is smaller than the system for the one-sided criterion"""

    def __init__(self, d_a: int, d_b: int):
        super().__init__(f"one-sided criterion needs d_B >= d_A, got d_A={d_a}, d_B={d_b}")
        self.error_code = "ANCILLA_TOO_SMALL"


# ============================================================================
# Parsing Exceptions
# ============================================================================

class ChannelParseError(AppException):
    """Raised when a channel file cannot be parsed"""

    def __init__(self, source: str, message: str):
        super().__init__(f"cannot parse channel from {source}: {message}", "CHANNEL_PARSE_ERROR")


# ============================================================================
# Numerical Exceptions
# ============================================================================

class NumericalFailureError(AppException):
    """Raised when an algorithm fails to converge or produces inconsistent results"""

    def __init__(self, message: str = "Numerical failure"):
        super().__init__(message, "NUMERICAL_FAILURE")
