"""
Boundary solvers: the dependence boundary beta*(beta1, beta2, r1, r2), the
single-sequence sparse-mixture boundary, and boundary curves for plotting.
"""
import logging
import math
from itertools import product
from pathlib import Path
from typing import IO, List, Sequence, Union

import pandas as pd
from scipy.optimize import bisect

from ..dep_types.theory import check_sparsity, check_strength
from ..errors import InvalidCalibration
from .alpha import AlphaFunctions
from .regions import DEFAULT_RES, coupled_max, strong_term, x_grid, x_knots

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["beta1", "beta2", "r1", "r2", "beta_star"]


def _q1_offset(beta1: float, beta2: float, r1: float, r2: float, res: int) -> float:
    """The beta-free part S of Q1 = 1/2 - beta + S."""
    f1, f2 = AlphaFunctions.gaussian(r1), AlphaFunctions.gaussian(r2)
    x = x_grid(res, x_knots(beta1, beta2, f1, f2))
    return coupled_max(x, strong_term(f1, x, beta1), strong_term(f2, x, beta2))


def boundary_beta(
    beta1: float,
    beta2: float,
    r1: float,
    r2: float,
    tol: float = 1e-4,
    res: int = DEFAULT_RES,
) -> float:
    """
    Smallest beta at which the Q1 supremum stops being positive, searched
    over [max(1/2, beta1, beta2), 1]. Returns 1 when every admissible beta
    is detectable and the lower end when none is.
    """
    check_sparsity(beta1, beta2)
    check_strength(r1, r2)
    lower = max(0.5, beta1, beta2)
    if lower >= 1.0:
        raise InvalidCalibration(f"no beta in (1/2, 1) satisfies max(beta1, beta2) <= beta for {beta1}, {beta2}")

    offset = _q1_offset(beta1, beta2, r1, r2, res)

    def q1(beta: float) -> float:
        return 0.5 - beta + offset

    if q1(1.0) >= -1e-12:
        return 1.0
    if q1(lower) <= 0.0:
        logger.info(f"Q1 is nonpositive on the whole range for beta1={beta1}, beta2={beta2}, r1={r1}, r2={r2}")
        return lower
    return float(bisect(q1, lower, 1.0, xtol=tol))


def single_seq_boundary(beta: float) -> float:
    """Sparse normal mixture boundary: beta - 1/2 up to 3/4, then (1 - sqrt(1 - beta))^2."""
    if not (0.5 < beta < 1.0):
        raise InvalidCalibration(f"beta={beta} must lie in (1/2, 1)")
    if beta <= 0.75:
        return beta - 0.5
    return (1.0 - math.sqrt(1.0 - beta)) ** 2


def boundary_curve(
    beta1s: Sequence[float],
    beta2s: Sequence[float],
    r1s: Sequence[float],
    r2s: Sequence[float],
    res: int = DEFAULT_RES,
    tol: float = 1e-4,
) -> pd.DataFrame:
    """beta* over the Cartesian product of the inputs, one row per grid point."""
    rows: List[List[float]] = []
    for b1, b2, r1, r2 in product(beta1s, beta2s, r1s, r2s):
        rows.append([b1, b2, r1, r2, boundary_beta(b1, b2, r1, r2, tol=tol, res=res)])
    logger.info(f"Computed {len(rows)} boundary points")
    return pd.DataFrame(rows, columns=CURVE_COLUMNS)


def write_boundary_csv(
    curve: pd.DataFrame,
    out: Union[str, Path, IO[str]],
    res: int = DEFAULT_RES,
    tol: float = 1e-4,
) -> None:
    """CSV with a leading '# res=..., tol=...' comment line."""
    if list(curve.columns) != CURVE_COLUMNS:
        raise InvalidCalibration(f"boundary curve columns must be {CURVE_COLUMNS}")

    def emit(handle: IO[str]) -> None:
        handle.write(f"# res={res}, tol={tol}\n")
        curve.to_csv(handle, index=False, float_format="%.6f", lineterminator="\n")

    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8", newline="") as handle:
            emit(handle)
    else:
        emit(out)

