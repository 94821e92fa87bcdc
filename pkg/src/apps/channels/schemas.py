# src/apps/channels/schemas.py

"""
Channel file format

{"kind": "kraus" | "choi", "d_in": int, "d_out": int, "data": ...,
 "subsystems": [d_a, d_b] (optional), "name": str (optional)}

For "choi", `data` is the row-major flattened Choi matrix as [re, im] pairs;
for "kraus", `data` is a list of such flattened Kraus matrices.
"""

from typing import Optional, Union

from pydantic import Field, model_validator

from src.common.enums import ChannelKind
from src.core.base_model import BaseSchema, EncodedVector


class ChannelFile(BaseSchema):
    kind: ChannelKind = Field(..., description="Representation stored in data")
    d_in: int = Field(..., ge=1, description="Input dimension")
    d_out: int = Field(..., ge=1, description="Output dimension")
    data: Union[list[EncodedVector], EncodedVector] = Field(..., description="Flattened complex entries")
    subsystems: Optional[tuple[int, int]] = Field(None, description="Bipartition d_a x d_b of the system")
    name: Optional[str] = Field(None, max_length=200)

    @model_validator(mode="after")
    def check_shapes(self) -> "ChannelFile":
        if self.d_in != self.d_out:
            raise ValueError(f"only square channels are supported, got d_out={self.d_out}, d_in={self.d_in}")
        if self.kind == ChannelKind.CHOI:
            expected = (self.d_in * self.d_out) ** 2
            if len(self.data) != expected or (self.data and len(self.data[0]) != 2):
                raise ValueError(f"choi data must hold {expected} [re, im] pairs")
        else:
            expected = self.d_in * self.d_out
            if not self.data:
                raise ValueError("kraus data must hold at least one operator")
            for k, operator in enumerate(self.data):
                if len(operator) != expected or any(len(pair) != 2 for pair in operator):
                    raise ValueError(f"kraus operator {k} must hold {expected} [re, im] pairs")
        if self.subsystems is not None:
            d_a, d_b = self.subsystems
            if d_a < 1 or d_b < 1 or d_a * d_b != self.d_in:
                raise ValueError(f"subsystems {d_a}x{d_b} do not factor d_in={self.d_in}")
        return self
