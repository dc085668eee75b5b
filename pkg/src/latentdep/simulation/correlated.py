"""
Serially correlated null statistics: a stationary AR(1) on latent normals,
folded. Used for robustness runs where features are not independent.
"""
from itertools import count
from typing import Iterator

import numpy as np
from scipy.signal import lfilter

from ..dep_types.core import PairedStatistics
from ..errors import InvalidConfig
from ..seeding import derive_rng


def ar1_normals(rng: np.random.Generator, p: int, rho: float) -> np.ndarray:
    """x_0 = e_0, x_j = rho x_{j-1} + sqrt(1 - rho^2) e_j; unit marginal variance."""
    e = rng.standard_normal(p)
    if rho == 0.0:
        return e
    scale = np.sqrt(1.0 - rho * rho)
    x, _ = lfilter([scale], [1.0, -rho], e, zi=[(1.0 - scale) * e[0]])
    return x


def gen_correlated_design(p: int, block_rho: float, seed: int) -> Iterator[PairedStatistics]:
    """Endless stream of folded AR(1) null pairs; draw b is keyed by (seed, b)."""
    if not (0.0 <= block_rho < 1.0):
        raise InvalidConfig(f"block_rho={block_rho} must lie in [0, 1)")
    if p < 1:
        raise InvalidConfig(f"p={p} must be positive")
    for b in count():
        t1 = np.abs(ar1_normals(derive_rng(seed, b, 1), p, block_rho))
        t2 = np.abs(ar1_normals(derive_rng(seed, b, 2), p, block_rho))
        yield PairedStatistics(t1=t1, t2=t2)
