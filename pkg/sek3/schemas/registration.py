from typing import List

from pydantic import BaseModel, Field, field_validator

from sek3.schemas.common import Vector3, _MODEL_CONFIG_IGNORE_EXTRA, chunk_triples
from sek3.schemas.group import GroupElementRecord


class PointBlockRecord(BaseModel):
    block: int = Field(0, ge=0)
    points: List[Vector3]

    model_config = _MODEL_CONFIG_IGNORE_EXTRA

    @field_validator("points", mode="before")
    @classmethod
    def normalize_points(cls, v):
        return chunk_triples(v)


class ObservationRecord(BaseModel):
    m: int = Field(..., ge=0)
    y: Vector3
    w: float = Field(1.0, gt=0)
    block: int = Field(0, ge=0)

    model_config = _MODEL_CONFIG_IGNORE_EXTRA


class RegistrationResult(BaseModel):
    element: GroupElementRecord
    cost: float = Field(..., ge=0)
    iterations: int = Field(..., ge=0)
