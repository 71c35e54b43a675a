"""Seedable, splittable random number streams.

All randomness in the package flows from a single 64-bit seed. Child seeds
are derived with splitmix64 so that sample ``i`` of a dataset gets its own
independent, platform-stable stream regardless of worker count or ordering.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> int:
    """One splitmix64 step; returns the next 64-bit value for ``state``."""
    z = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(seed: int, *path: int) -> int:
    """Derive a child seed by folding path indices into the root seed."""
    s = splitmix64(seed & _MASK64)
    for idx in path:
        s = splitmix64(s ^ splitmix64((idx & _MASK64) + 0xA5A5A5A5A5A5A5A5))
    return s


def make_rng(seed: int, *path: int) -> np.random.Generator:
    """Generator for the stream identified by (seed, *path)."""
    return np.random.Generator(np.random.PCG64(derive_seed(seed, *path)))
