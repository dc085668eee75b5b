"""
Screen every pair among K named sequences for latent dependence.
"""
import itertools
import logging
from typing import List, Mapping

import numpy as np
from numpy.typing import ArrayLike

from ..dep_types.core import PairedStatistics, PairwiseResult, PermutationConfig, StatisticKind
from ..errors import TooFewPoints
from ..seeding import derive_seed
from .permutation import permutation_pvalue

logger = logging.getLogger(__name__)


def pairwise_dependence(
    sequences: Mapping[str, ArrayLike],
    cfg: PermutationConfig,
    statistic: StatisticKind = "dhat",
) -> List[PairwiseResult]:
    """
    Permutation test for all K(K-1)/2 unordered pairs, in insertion order.
    Pair i uses a seed derived from (cfg.seed, i); adjusted p-values are
    Bonferroni, min(1, K(K-1)/2 * p).
    """
    names = list(sequences)
    if len(names) < 2:
        raise TooFewPoints("pairwise screening needs at least two sequences")
    pairs = list(itertools.combinations(names, 2))
    n_tests = len(pairs)
    results: List[PairwiseResult] = []
    for i, (first, second) in enumerate(pairs):
        data = PairedStatistics(t1=np.asarray(sequences[first]), t2=np.asarray(sequences[second]))
        pair_cfg = cfg.model_copy(update={"seed": derive_seed(cfg.seed, i)})
        result = permutation_pvalue(data, pair_cfg, statistic)
        results.append(PairwiseResult(
            first=first,
            second=second,
            result=result,
            adjusted_p_value=min(1.0, n_tests * result.p_value),
        ))
        logger.info(f"{first}-{second}: p={result.p_value:.4g}")
    return results
