"""
Log-likelihood-ratio exponent functions (alpha) and their tail suprema (v).

For the Gaussian alternative N(sqrt(2 r log p), 1) against N(0, 1):
    alpha_minus(a) = -2 sqrt(a r) - r,   alpha_plus(a) = 2 sqrt(a r) - r,
    v_minus(x) = -(sqrt(x) + sqrt(r))^2,  v_plus(x) = -(sqrt(x) - sqrt(r))_+^2.
"""
import logging
from typing import Callable, List, Tuple

import numpy as np
from numpy.typing import ArrayLike

from ..errors import InvalidCalibration

logger = logging.getLogger(__name__)

ArrayFn = Callable[[np.ndarray], np.ndarray]


def alpha_normal(a: ArrayLike, r: float) -> Tuple[np.ndarray, np.ndarray]:
    """(alpha_minus, alpha_plus) of the Gaussian model at a > 0."""
    root = 2.0 * np.sqrt(np.asarray(a, dtype=np.float64) * r)
    return -root - r, root - r


def v_funcs(x: ArrayLike, r: float) -> Tuple[np.ndarray, np.ndarray]:
    """(v_minus, v_plus) of the Gaussian model at x > 0."""
    sx = np.sqrt(np.asarray(x, dtype=np.float64))
    sr = np.sqrt(r)
    return -(sx + sr) ** 2, -np.maximum(sx - sr, 0.0) ** 2


class AlphaFunctions:
    """
    Alpha and v functions for one sequence.

    Use `gaussian(r)` for the closed forms or `tabulated(a, alpha_minus,
    alpha_plus)` for a user-supplied mixture. `knots` lists abscissae where
    the objectives built from these functions have kinks or stationary points;
    grid searches add them to their grids.
    """

    def __init__(
        self,
        alpha_minus: ArrayFn,
        alpha_plus: ArrayFn,
        v_minus: ArrayFn,
        v_plus: ArrayFn,
        knots: Callable[[float], List[float]],
    ):
        self.alpha_minus = alpha_minus
        self.alpha_plus = alpha_plus
        self.v_minus = v_minus
        self.v_plus = v_plus
        self._knots = knots

    def alpha(self, a: np.ndarray) -> np.ndarray:
        return np.maximum(self.alpha_minus(a), self.alpha_plus(a))

    def knots(self, beta_k: float) -> List[float]:
        return self._knots(beta_k)

    @classmethod
    def gaussian(cls, r: float) -> "AlphaFunctions":
        if not (np.isfinite(r) and r >= 0.0):
            raise InvalidCalibration(f"signal strength r={r} must be finite and nonnegative")

        def knots(beta_k: float) -> List[float]:
            points = [r, 4.0 * r]  # v_plus kink; stationary point of 2 alpha(a) - a
            if r > 0.0:
                # alpha_plus(a) = beta_k
                points.append(((beta_k + r) / (2.0 * np.sqrt(r))) ** 2)
            return [x for x in points if x > 0.0]

        return cls(
            alpha_minus=lambda a: alpha_normal(a, r)[0],
            alpha_plus=lambda a: alpha_normal(a, r)[1],
            v_minus=lambda x: v_funcs(x, r)[0],
            v_plus=lambda x: v_funcs(x, r)[1],
            knots=knots,
        )

    @classmethod
    def tabulated(cls, a: ArrayLike, alpha_minus: ArrayLike, alpha_plus: ArrayLike) -> "AlphaFunctions":
        """
        Linear interpolation of tabulated alpha functions on an ascending grid a.
        v(x) is the running maximum of alpha(a_i) - a_i over a_i >= x; beyond the
        last grid point it continues as alpha(a_last) - x.
        """
        grid = np.asarray(a, dtype=np.float64)
        am = np.asarray(alpha_minus, dtype=np.float64)
        ap = np.asarray(alpha_plus, dtype=np.float64)
        if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0) or grid[0] <= 0:
            raise InvalidCalibration("tabulated alpha functions need a positive, strictly increasing grid")
        if am.shape != grid.shape or ap.shape != grid.shape:
            raise InvalidCalibration("alpha tables must match the grid length")

        def tail_sup(values: np.ndarray) -> ArrayFn:
            suffix = np.maximum.accumulate((values - grid)[::-1])[::-1]

            def v(x: np.ndarray) -> np.ndarray:
                x = np.asarray(x, dtype=np.float64)
                idx = np.searchsorted(grid, x, side="left")
                inside = idx < grid.size
                out = values[-1] - x
                return np.where(inside, suffix[np.minimum(idx, grid.size - 1)], out)

            return v

        logger.debug(f"Tabulated alpha functions on {grid.size} points in [{grid[0]}, {grid[-1]}]")
        return cls(
            alpha_minus=lambda x: np.interp(x, grid, am),
            alpha_plus=lambda x: np.interp(x, grid, ap),
            v_minus=tail_sup(am),
            v_plus=tail_sup(ap),
            knots=lambda beta_k: [float(g) for g in grid],
        )
