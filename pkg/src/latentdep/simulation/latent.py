"""
Fixed-effect latent indicators.

Under the alternative, n12 features are non-null in both sequences and the
remaining n_k - n12 non-nulls of each sequence are placed independently
among the other features. Under the null each sequence places its n_k
non-nulls independently and n12 is ignored.
"""
import logging

import numpy as np

from ..dep_types.simulation import Hypothesis, LatentAssignment
from ..errors import CountOverflow
from ..seeding import derive_rng

logger = logging.getLogger(__name__)


def assign_latent(p: int, n1: int, n2: int, n12: int, hypothesis: Hypothesis, seed: int) -> LatentAssignment:
    if min(n1, n2, n12) < 0:
        raise CountOverflow(f"signal counts must be nonnegative, got n1={n1}, n2={n2}, n12={n12}")
    if n1 > p or n2 > p:
        raise CountOverflow(f"signal counts n1={n1}, n2={n2} exceed p={p}")

    rng = derive_rng(seed)
    i1 = np.zeros(p, dtype=bool)
    i2 = np.zeros(p, dtype=bool)
    if hypothesis == "alternative":
        if n12 > min(n1, n2):
            raise CountOverflow(f"n12={n12} exceeds min(n1, n2)={min(n1, n2)}")
        both = rng.choice(p, size=n12, replace=False)
        rest = np.setdiff1d(np.arange(p), both, assume_unique=True)
        i1[both] = True
        i2[both] = True
        i1[rng.choice(rest, size=n1 - n12, replace=False)] = True
        i2[rng.choice(rest, size=n2 - n12, replace=False)] = True
    else:
        i1[rng.choice(p, size=n1, replace=False)] = True
        i2[rng.choice(p, size=n2, replace=False)] = True
        n12 = 0

    logger.debug(f"Assigned {n1}/{n2} non-nulls ({hypothesis}, overlap {int(np.sum(i1 & i2))}) among p={p}")
    return LatentAssignment(i1=i1, i2=i2, n1=n1, n2=n2, n12=n12, hypothesis=hypothesis, seed=seed)
