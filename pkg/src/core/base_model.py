# src/core/base_model.py

"""
Base models shared by every app
Pydantic schema base for serializable results and the numpy carrier types for numerics
"""
from typing import Annotated, Optional

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel as PydanticBaseModel, ConfigDict, Field


# ==============================================================================
# Numeric carriers
# ==============================================================================

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

# [re, im] pairs, row-major, as written to JSON
EncodedComplex = Annotated[list[float], Field(min_length=2, max_length=2)]
EncodedVector = list[EncodedComplex]


def frozen_array(values: npt.ArrayLike, dtype: type = np.complex128) -> np.ndarray:
    """Copy values into a read-only array so value objects stay immutable."""
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


# ==============================================================================
# Pydantic Base Models
# ==============================================================================

class BaseSchema(PydanticBaseModel):
    """
    Base Pydantic schema with common configuration
    """
    model_config = ConfigDict(
        from_attributes=True,
        use_enum_values=True,
        validate_assignment=True,
        arbitrary_types_allowed=True,
        str_strip_whitespace=True,
        frozen=True,
    )


class ErrorResponse(BaseSchema):
    """Standard error report written by the CLI on failure"""
    success: bool = Field(False, description="Run success status")
    error_code: str = Field(..., description="Error code")
    message: str = Field(..., description="Error message")
    details: Optional[dict] = Field(None, description="Additional error details")
