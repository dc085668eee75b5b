"""
Rank preprocessing for paired statistics.
"""
import logging
from typing import Tuple

import numpy as np

from ..dep_types.core import PairedStatistics, RankedPairs
from ..errors import TooFewPoints

logger = logging.getLogger(__name__)

MIN_POINTS = 2


def _rank_one(values: np.ndarray) -> Tuple[np.ndarray, ...]:
    order = np.argsort(values, kind="stable").astype(np.int64, copy=False)
    ordered = values[order]
    keep = np.empty(ordered.size, dtype=bool)
    keep[0] = True
    np.not_equal(ordered[1:], ordered[:-1], out=keep[1:])
    distinct = ordered[keep]
    starts = np.flatnonzero(keep)
    ends = np.append(starts[1:], ordered.size)  # max-rank: end of each tie run
    run = np.cumsum(keep, dtype=np.int64) - 1
    level = np.empty(values.size, dtype=np.int64)
    level[order] = run
    rank = np.empty(values.size, dtype=np.int64)
    rank[order] = ends[run]
    counts = (values.size - starts).astype(np.int64)
    for arr in (order, rank, distinct, level, counts):
        arr.setflags(write=False)
    return order, rank, distinct, level, counts


def preprocess(pairs: PairedStatistics) -> RankedPairs:
    """Sort both sequences and derive ranks, distinct order statistics and survival counts."""
    if pairs.p < MIN_POINTS:
        raise TooFewPoints(f"need at least {MIN_POINTS} pairs, got {pairs.p}")
    order1, rank1, distinct1, level1, counts1 = _rank_one(pairs.t1)
    order2, rank2, distinct2, level2, counts2 = _rank_one(pairs.t2)
    logger.debug(f"Preprocessed p={pairs.p}: {distinct1.size} / {distinct2.size} distinct values")
    return RankedPairs(
        source=pairs,
        order1=order1,
        order2=order2,
        rank1=rank1,
        rank2=rank2,
        distinct1=distinct1,
        distinct2=distinct2,
        level1=level1,
        level2=level2,
        counts1=counts1,
        counts2=counts2,
    )
