"""Seeded random streams.

Every sample gets its own generator derived from ``(seed, index)`` through
``numpy.random.SeedSequence`` spawn keys, so a sample's draws do not depend
on which worker produced it or on how many samples came before.
"""

from __future__ import annotations

import numpy as np

MAX_SEED = 2**64 - 1


def sample_rng(seed: int, index: int) -> np.random.Generator:
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if index < 0:
        raise ValueError("sample index must be non-negative")
    sequence = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(sequence))


def draw_uniform(rng: np.random.Generator) -> float:
    """One draw from [0, 1) with 53 bits of precision."""
    return float(rng.random())


def segment_order(rng: np.random.Generator, count: int) -> tuple[int, ...]:
    return tuple(int(i) for i in rng.permutation(count))
