"""
Baseline statistics compared against the dependence statistic:
Spearman's rank correlation, the max test and higher criticism.
"""
import logging
from typing import Tuple

import numpy as np
from scipy import stats

from ..dep_types.core import PairedStatistics
from ..errors import DegenerateInput, EmptyAfterRestriction, TooFewPoints
from ..seeding import derive_rng

logger = logging.getLogger(__name__)

PVALUE_FLOOR = 1e-15


def spearman_rho(t1: np.ndarray, t2: np.ndarray) -> float:
    if np.ptp(t1) == 0 or np.ptp(t2) == 0:
        raise DegenerateInput("Spearman correlation is undefined for a constant sequence")
    rho = stats.spearmanr(t1, t2).statistic
    return float(rho)


def spearman_test(pairs: PairedStatistics) -> Tuple[float, float]:
    """Rank correlation and its one-sided large-sample p-value for rho > 0."""
    if pairs.p < 3:
        raise TooFewPoints(f"Spearman test needs p >= 3, got {pairs.p}")
    rho = spearman_rho(pairs.t1, pairs.t2)
    z = rho * np.sqrt(pairs.p - 1)
    return rho, float(stats.norm.sf(z))


def max_test_stat(pairs: PairedStatistics) -> float:
    """max_j min(t1[j], t2[j])."""
    return float(np.max(np.minimum(pairs.t1, pairs.t2)))


def two_sided_pvalues(t: np.ndarray) -> np.ndarray:
    """2 Phi(-|t|) for two-tailed Gaussian statistics."""
    return 2.0 * stats.norm.sf(np.abs(t))


def hc_stat(pvalues: np.ndarray, strict: bool = False) -> float:
    """
    Higher criticism over the ordered p-values not exceeding 1/2:
    max_j sqrt(p) (j/p - p_(j)) / sqrt(p_(j) (1 - p_(j))).

    When no p-value is at most 1/2 the j = 1 term is returned and a warning
    is logged; with strict=True EmptyAfterRestriction is raised instead.
    """
    pv = np.sort(np.clip(np.asarray(pvalues, dtype=np.float64), PVALUE_FLOOR, 1.0 - PVALUE_FLOOR))
    n = pv.size
    if n == 0:
        raise TooFewPoints("higher criticism needs at least one p-value")
    j = np.arange(1, n + 1)
    scores = np.sqrt(n) * (j / n - pv) / np.sqrt(pv * (1.0 - pv))
    restricted = pv <= 0.5
    if not restricted.any():
        if strict:
            raise EmptyAfterRestriction("no ordered p-value is at most 1/2")
        logger.warning("No ordered p-value is at most 1/2; returning the j=1 term")
        return float(scores[0])
    return float(scores[restricted].max())


def hc_null_distribution(p: int, reps: int = 200, seed: int = 0) -> np.ndarray:
    """HC under p independent standard normals, `reps` realizations."""
    null = np.empty(reps)
    for b in range(reps):
        z = derive_rng(seed, b).standard_normal(p)
        null[b] = hc_stat(two_sided_pvalues(z))
    logger.info(f"Simulated HC null distribution: p={p}, reps={reps}")
    return np.sort(null)


def hc_pvalue(statistic: float, null: np.ndarray) -> float:
    exceed = int(np.sum(null >= statistic))
    return (1 + exceed) / (null.size + 1)
