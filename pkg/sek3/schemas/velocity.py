from typing import List, Literal

from pydantic import BaseModel, Field, field_validator

from sek3.schemas.common import Vector3, _MODEL_CONFIG_IGNORE_EXTRA, chunk_triples


class VelocityLogRecord(BaseModel):
    """One line of a velocity log; held constant until the next record."""

    t: float
    omega: Vector3
    nu: List[Vector3] = Field(default_factory=list)
    frame: Literal["left", "right"] = "right"

    model_config = _MODEL_CONFIG_IGNORE_EXTRA

    @field_validator("nu", mode="before")
    @classmethod
    def normalize_nu(cls, v):
        return chunk_triples(v)

    @field_validator("frame", mode="before")
    @classmethod
    def lower_frame(cls, v):
        if isinstance(v, str):
            return v.strip().lower()
        return v
