"""
Permutation and cyclic-shift p-values.

The second sequence stays fixed; each replicate reindexes the first one,
either by a uniform random permutation or by a cyclic shift
(t1[i], ..., t1[p-1], t1[0], ..., t1[i-1]) with i drawn from {1, ..., p-1}.
Replicate b draws from a stream keyed by (seed, b), so results do not
depend on execution order.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..config import get_settings
from ..dep_types.core import (
    DetectionResult,
    PairedStatistics,
    PermutationConfig,
    PermutationResult,
    PermutationScheme,
    StatisticKind,
)
from ..empirical.dstat import dstat_fast
from ..empirical.ranks import preprocess
from ..errors import InvalidConfig
from ..seeding import derive_rng
from ..simulation.baselines import max_test_stat, spearman_rho, spearman_test

logger = logging.getLogger(__name__)


def replicate_permutation(scheme: PermutationScheme, p: int, seed: int, b: int) -> np.ndarray:
    """Index map for replicate b: the permuted first sequence is t1[perm]."""
    rng = derive_rng(seed, b)
    if scheme == "full_shuffle":
        return rng.permutation(p)
    shift = int(rng.integers(1, p))
    return (np.arange(p, dtype=np.int64) + shift) % p


def _observed_and_replicate(
    pairs: PairedStatistics,
    cfg: PermutationConfig,
    statistic: StatisticKind,
) -> Tuple[float, Optional[DetectionResult], Callable[[np.ndarray], float]]:
    if statistic == "dhat":
        ranked = preprocess(pairs)
        trunc = cfg.truncation_for(pairs.p)
        observed = dstat_fast(ranked, trunc)
        return (
            observed.statistic,
            observed,
            lambda perm: dstat_fast(ranked.permute_first(perm), trunc).statistic,
        )
    if statistic == "max":
        t1, t2 = pairs.t1, pairs.t2
        return (
            max_test_stat(pairs),
            None,
            lambda perm: float(np.max(np.minimum(t1[perm], t2))),
        )
    if statistic == "spearman":
        rho, _ = spearman_test(pairs)
        t1, t2 = pairs.t1, pairs.t2
        return rho, None, lambda perm: spearman_rho(t1[perm], t2)
    raise InvalidConfig(f"unknown statistic kind {statistic!r}")


def permutation_pvalue(
    pairs: PairedStatistics,
    cfg: PermutationConfig,
    statistic: StatisticKind = "dhat",
    workers: Optional[int] = None,
) -> PermutationResult:
    """p-value (1 + #{replicate >= observed}) / (B + 1)."""
    p = pairs.p
    if cfg.scheme == "cyclic_shift" and p < 3:
        raise InvalidConfig(f"cyclic shifting needs p >= 3, got {p}")
    observed_value, observed, replicate = _observed_and_replicate(pairs, cfg, statistic)

    def run(b: int) -> float:
        return replicate(replicate_permutation(cfg.scheme, p, cfg.seed, b))

    workers = workers or get_settings().workers
    logger.info(
        f"Running {cfg.replicates} {cfg.scheme} replicates of '{statistic}' "
        f"(p={p}, seed={cfg.seed}, workers={workers})"
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values: List[float] = list(pool.map(run, range(cfg.replicates)))
    else:
        values = [run(b) for b in range(cfg.replicates)]

    exceed = int(np.sum(np.asarray(values) >= observed_value))
    result = PermutationResult(
        statistic=statistic,
        observed_statistic=observed_value,
        observed=observed,
        replicates=cfg.replicates,
        exceed_count=exceed,
        p_value=(1 + exceed) / (cfg.replicates + 1),
        replicate_statistics=values if cfg.keep_replicates else None,
        seed=cfg.seed,
        scheme=cfg.scheme,
    )
    logger.info(f"Observed {statistic}={observed_value:.6g}, exceed={exceed}, p={result.p_value:.6g}")
    return result
