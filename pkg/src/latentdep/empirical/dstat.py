"""
The supremum-type dependence statistic over the grid of distinct order statistics.

For thresholds (a, b) the empirical survival values are
S1 = #{t1 >= a}/p, S2 = #{t2 >= b}/p and S12 = #{t1 >= a, t2 >= b}/p, and the
grid value is

    D = sqrt(p) |S12 - S1 S2| / sqrt(S1 S2 - (S1 S2)^2).

Only the top m1 (resp. m2) distinct values of each sequence are used as
thresholds. The cell with S1 S2 = 1 is skipped. Ties in the maximum are
broken toward the smallest l, then the smallest m, where (l, m) are 1-based
ascending indices into the distinct order statistics.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from ..config import get_settings
from ..dep_types.core import DetectionResult, RankedPairs, TruncationConfig
from ..errors import DegenerateInput

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


def _cell_values(n1, n2, n12, p: int) -> np.ndarray:
    """Grid values from integer survival counts. Shared by every evaluator so results agree bit for bit."""
    s1 = n1 / p
    s2 = n2 / p
    prod = s1 * s2
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.sqrt(p) * np.abs(n12 / p - prod) / np.sqrt(prod - prod * prod)
    return np.where((n1 == p) & (n2 == p), -np.inf, values)


def _grid_bounds(ranked: RankedPairs, trunc: TruncationConfig) -> Tuple[int, int, int, int]:
    """Effective (m1, m2) and the first ascending distinct index searched per sequence."""
    trunc.check(ranked.p)
    k1, k2 = ranked.distinct1.size, ranked.distinct2.size
    if k1 < 2 or k2 < 2:
        raise DegenerateInput("every grid cell is excluded: a sequence has a single distinct value")
    m1, m2 = min(trunc.m1, k1), min(trunc.m2, k2)
    return m1, m2, k1 - m1, k2 - m2


def _result(ranked: RankedPairs, value: float, cell: Cell, m1: int, m2: int, cells: int) -> DetectionResult:
    l, m = cell
    return DetectionResult(
        statistic=float(value),
        argmax_cell=(l, m),
        argmax_thresholds=(float(ranked.distinct1[l - 1]), float(ranked.distinct2[m - 1])),
        truncation=TruncationConfig(m1=m1, m2=m2),
        cells_evaluated=cells,
    )


def cell_value(ranked: RankedPairs, l: int, m: int) -> float:
    """Recompute D at one grid cell (1-based ascending distinct indices)."""
    t1, t2 = ranked.source.t1, ranked.source.t2
    a, b = ranked.distinct1[l - 1], ranked.distinct2[m - 1]
    above1, above2 = t1 >= a, t2 >= b
    n1 = np.array([above1.sum()], dtype=np.int64)
    n2 = np.array([above2.sum()], dtype=np.int64)
    n12 = np.array([(above1 & above2).sum()], dtype=np.int64)
    return float(_cell_values(n1, n2, n12, ranked.p)[0])


def dstat_naive(ranked: RankedPairs, trunc: TruncationConfig) -> DetectionResult:
    """Reference evaluation: direct counting at every cell, double loop."""
    m1, m2, l0, c0 = _grid_bounds(ranked, trunc)
    p = ranked.p
    t1, t2 = ranked.source.t1, ranked.source.t2
    thresholds2 = ranked.distinct2[c0:]
    n2 = (t2[:, None] >= thresholds2[None, :]).sum(axis=0).astype(np.int64)

    best_value = -np.inf
    best_cell: Optional[Cell] = None
    cells = 0
    for li in range(l0, ranked.distinct1.size):
        above = t1 >= ranked.distinct1[li]
        n1 = np.int64(above.sum())
        n12 = (t2[above][:, None] >= thresholds2[None, :]).sum(axis=0).astype(np.int64)
        row = _cell_values(n1, n2, n12, p)
        for mi in range(m2):
            value = row[mi]
            if value == -np.inf:
                continue
            cells += 1
            if value > best_value:
                best_value = value
                best_cell = (li + 1, c0 + mi + 1)

    if best_cell is None:
        raise DegenerateInput("every grid cell is excluded")
    return _result(ranked, best_value, best_cell, m1, m2, cells)


def dstat_fast(
    ranked: RankedPairs,
    trunc: TruncationConfig,
    block_rows: Optional[int] = None,
) -> DetectionResult:
    """
    Sweep the T1 thresholds from the largest down in row blocks.

    Only points lying in the top m1 x m2 corner contribute to joint counts.
    Each block scatters those points into a (rows x m2) increment table,
    turns it into dominance counts with a column suffix sum and a row
    cumulative sum, and adds the running counts carried from the rows above.
    Cost is O(p log p) for preprocessing plus O(m1 m2) for the sweep.
    """
    m1, m2, l0, c0 = _grid_bounds(ranked, trunc)
    p = ranked.p
    block = block_rows or get_settings().block_rows

    inside = (ranked.level1 >= l0) & (ranked.level2 >= c0)
    rows = ranked.level1[inside] - l0
    cols = ranked.level2[inside] - c0
    by_row = np.argsort(rows, kind="stable")
    rows, cols = rows[by_row], cols[by_row]

    n2 = ranked.counts2[c0:][None, :]
    carry = np.zeros(m2, dtype=np.int64)
    best_value = -np.inf
    best_cell: Optional[Cell] = None

    for hi in range(m1, 0, -block):
        lo = max(0, hi - block)
        start, stop = np.searchsorted(rows, [lo, hi], side="left")
        increments = np.zeros((hi - lo, m2), dtype=np.int64)
        # table row i holds grid row hi - 1 - i
        np.add.at(increments, (hi - 1 - rows[start:stop], cols[start:stop]), 1)
        increments = np.cumsum(increments[:, ::-1], axis=1)[:, ::-1]
        joint = np.cumsum(increments, axis=0) + carry[None, :]
        carry = joint[-1].copy()

        grid_rows = np.arange(hi - 1, lo - 1, -1)
        n1 = ranked.counts1[l0 + grid_rows][:, None]
        values = _cell_values(n1, n2, joint, p)
        top = values.max()
        if top == -np.inf or top < best_value:
            continue
        hits = np.argwhere(values == top)
        i_star = hits[:, 0].max()
        c_star = hits[hits[:, 0] == i_star, 1].min()
        cell = (l0 + int(grid_rows[i_star]) + 1, c0 + int(c_star) + 1)
        if top > best_value or best_cell is None or cell < best_cell:
            best_value, best_cell = top, cell

    if best_cell is None:
        raise DegenerateInput("every grid cell is excluded")
    cells = m1 * m2 - (1 if l0 == 0 and c0 == 0 else 0)
    logger.debug(f"dstat_fast p={p} m1={m1} m2={m2}: D={best_value:.6g} at {best_cell}")
    return _result(ranked, best_value, best_cell, m1, m2, cells)
