from typing import List

import numpy as np
from pydantic import BaseModel, Field, model_validator

from sek3.lie.group import GroupElement, TangentVector
from sek3.schemas.common import _MODEL_CONFIG_IGNORE_EXTRA


class GroupElementRecord(BaseModel):
    """Flat form of an element: ``r`` row-major, ``p`` as 3K numbers."""

    k: int = Field(..., ge=0)
    r: List[float] = Field(..., min_length=9, max_length=9)
    p: List[float] = Field(default_factory=list)

    model_config = _MODEL_CONFIG_IGNORE_EXTRA

    @model_validator(mode="after")
    def check_translation_count(self):
        if len(self.p) != 3 * self.k:
            raise ValueError(f"p must hold 3K = {3 * self.k} numbers, got {len(self.p)}")
        return self

    @classmethod
    def from_element(cls, g: GroupElement) -> "GroupElementRecord":
        return cls(k=g.k, r=g.r.reshape(-1).tolist(), p=g.p.reshape(-1).tolist())

    def to_element(self) -> GroupElement:
        m = np.eye(self.k + 3)
        m[:3, :3] = np.reshape(self.r, (3, 3))
        m[:3, 3:] = np.reshape(self.p, (self.k, 3)).T
        return GroupElement.from_matrix(m)


class TangentVectorRecord(BaseModel):
    k: int = Field(..., ge=0)
    xi: List[float]

    model_config = _MODEL_CONFIG_IGNORE_EXTRA

    @model_validator(mode="after")
    def check_dimension(self):
        if len(self.xi) != 3 * (self.k + 1):
            raise ValueError(f"xi must hold 3(K+1) = {3 * (self.k + 1)} numbers, got {len(self.xi)}")
        return self

    @classmethod
    def from_tangent(cls, xi: TangentVector) -> "TangentVectorRecord":
        return cls(k=xi.k, xi=xi.as_array().tolist())

    def to_tangent(self) -> TangentVector:
        return TangentVector.from_array(self.xi)
