"""Counter-based random draws.

Row ``i`` of every draw is a pure function of ``(seed, stream, i)``: rows are
grouped in blocks of ``SAMPLE_CHUNK`` and block ``c`` is generated from its own
``SeedSequence(seed, spawn_key=(stream, c))``. Any split of the index range
over workers therefore reproduces the serial result bit for bit.
"""
import numpy as np

from sek3.core.config import settings


def _block_generator(seed: int, stream: int, block: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(seed, spawn_key=(stream, block))
    return np.random.Generator(np.random.PCG64(sequence))


def _draw_rows(seed: int, stream: int, start: int, n: int, dim: int, draw) -> np.ndarray:
    chunk = settings.SAMPLE_CHUNK
    out = np.empty((n, dim))
    if n == 0:
        return out
    first, last = start // chunk, (start + n - 1) // chunk
    for block in range(first, last + 1):
        rows = draw(_block_generator(seed, stream, block), (chunk, dim))
        lo = max(start, block * chunk)
        hi = min(start + n, (block + 1) * chunk)
        out[lo - start:hi - start] = rows[lo - block * chunk:hi - block * chunk]
    return out


def standard_normal_rows(seed: int, n: int, dim: int, start: int = 0, stream: int = 0) -> np.ndarray:
    """Rows ``start .. start+n-1`` of the seeded standard-normal stream."""
    return _draw_rows(seed, stream, start, n, dim, lambda gen, shape: gen.standard_normal(shape))


def uniform_rows(seed: int, n: int, dim: int, start: int = 0, stream: int = 0) -> np.ndarray:
    """Rows of the seeded U[0, 1) stream, same block contract as the normals."""
    return _draw_rows(seed, stream, start, n, dim, lambda gen, shape: gen.random(shape))
