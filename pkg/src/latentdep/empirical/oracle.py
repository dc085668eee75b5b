"""
Oracle version of the dependence statistic, with known marginal survival functions.
"""
import logging
from typing import Callable

import numpy as np

from ..dep_types.core import DetectionResult, PairedStatistics, TruncationConfig
from ..errors import DegenerateInput, InvalidSurvival

logger = logging.getLogger(__name__)

SurvivalFunction = Callable[[np.ndarray], np.ndarray]


def _thresholds(values: np.ndarray) -> np.ndarray:
    # each data point plus its right limit; the empirical numerator is constant in between
    return np.unique(np.concatenate([values, np.nextafter(values, np.inf)]))


def _evaluate_survival(s: SurvivalFunction, points: np.ndarray, name: str) -> np.ndarray:
    try:
        values = np.asarray(s(points), dtype=np.float64)
    except (TypeError, ValueError):
        values = np.array([float(s(x)) for x in points])
    if values.shape != points.shape:
        values = np.broadcast_to(values, points.shape).astype(np.float64)
    bad = ~np.isfinite(values) | (values < 0.0) | (values > 1.0)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise InvalidSurvival(f"{name}({points[i]!r}) = {values[i]!r} is outside [0, 1]")
    return values


def dstat_oracle(pairs: PairedStatistics, s1: SurvivalFunction, s2: SurvivalFunction) -> DetectionResult:
    """
    Supremum of sqrt(p) |S12_hat - S1 S2| / sqrt(S1 S2 - (S1 S2)^2) with S1, S2 the true
    marginal survival functions, evaluated at every data threshold and its right limit.
    Cells with S1 S2 in {0, 1} are skipped.
    """
    p = pairs.p
    t1, t2 = pairs.t1, pairs.t2
    grid1, grid2 = _thresholds(t1), _thresholds(t2)
    surv1 = _evaluate_survival(s1, grid1, "s1")
    surv2 = _evaluate_survival(s2, grid2, "s2")

    best_value = -np.inf
    best_cell = None
    cells = 0
    for i, a in enumerate(grid1):
        above = t1 >= a
        joint = np.sort(t2[above])
        n12 = joint.size - np.searchsorted(joint, grid2, side="left")
        prod = surv1[i] * surv2
        valid = (prod > 0.0) & (prod < 1.0)
        if not valid.any():
            continue
        cells += int(valid.sum())
        with np.errstate(divide="ignore", invalid="ignore"):
            row = np.sqrt(p) * np.abs(n12 / p - prod) / np.sqrt(prod - prod * prod)
        row = np.where(valid, row, -np.inf)
        j = int(np.argmax(row))
        if row[j] > best_value:
            best_value, best_cell = row[j], (i + 1, j + 1)

    if best_cell is None:
        raise DegenerateInput("survival functions are 0 or 1 at every threshold")
    l, m = best_cell
    return DetectionResult(
        statistic=float(best_value),
        argmax_cell=best_cell,
        argmax_thresholds=(float(grid1[l - 1]), float(grid2[m - 1])),
        truncation=TruncationConfig.full(p),
        cells_evaluated=cells,
    )
