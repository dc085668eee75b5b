"""
Counter-based seed derivation.

Every random stream is keyed by (seed, *counters) through numpy's
SeedSequence spawn keys, so replicate b of an experiment draws the same
numbers whether replicates run in order, out of order or on threads.
"""
import numpy as np


def derive_rng(seed: int, *counters: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(counters)))


def derive_seed(seed: int, *counters: int) -> int:
    """A 64-bit child seed for handing to another seeded entry point."""
    state = np.random.SeedSequence(seed, spawn_key=tuple(counters)).generate_state(1, np.uint64)
    return int(state[0])
