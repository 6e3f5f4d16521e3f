"""
Seeded random streams.

Every seeded operation draws from a Philox counter-based generator keyed by
``SeedSequence([seed, *stream])``, so a (seed, stream) pair always yields the
same numbers regardless of call order or worker count.
"""
import numpy as np


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [int(s) for s in stream]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def random_complex(rng: np.random.Generator, size) -> np.ndarray:
    """Complex Gaussian samples (unnormalized)."""
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    vec = random_complex(rng, dim)
    return vec / np.linalg.norm(vec)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    q, r = np.linalg.qr(random_complex(rng, (dim, dim)))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


# Stream identifiers; each seeded consumer draws from its own stream
STREAM_PRODUCT_RESTART = 0
STREAM_Z_CANDIDATES = 1
STREAM_DEGENERATE_XY = 2
STREAM_SYMMETRIC_GRID = 3
STREAM_QUDIT_FALLBACK = 4
STREAM_SEARCH_RESTART = 5
