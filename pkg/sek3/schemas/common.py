from typing import Annotated, List

from pydantic import Field

_MODEL_CONFIG_IGNORE_EXTRA = {
    "extra": "ignore",
}

Vector3 = Annotated[List[float], Field(min_length=3, max_length=3)]


def chunk_triples(v):
    """Accept either a list of 3-vectors or a flat list of 3K numbers."""
    if v is None:
        return []
    if isinstance(v, (list, tuple)) and v and not isinstance(v[0], (list, tuple)):
        if len(v) % 3:
            raise ValueError(f"flat translation list must have 3K entries, got {len(v)}")
        return [list(v[i:i + 3]) for i in range(0, len(v), 3)]
    return v
