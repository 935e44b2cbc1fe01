"""Seed handling.

Every randomised routine takes either an int seed or a
``numpy.random.Generator``.  Int seeds are passed through SplitMix64 before
seeding PCG64, and per-trial substreams are derived as
``splitmix64(splitmix64(seed) ^ index)`` so that trial ``i`` sees the same
numbers no matter which worker runs it or in which order.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def substream_seed(seed: int, index: int) -> int:
    return splitmix64(splitmix64(seed & MASK64) ^ (index & MASK64))


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("a seed is required")
    return np.random.Generator(np.random.PCG64(splitmix64(int(seed) & MASK64)))


def substream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(substream_seed(seed, index)))
