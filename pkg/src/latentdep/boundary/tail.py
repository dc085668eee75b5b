"""
Finite-p check of the Gaussian tail approximation
F1((F0)^-1(p^-x)) = p^(v_minus(x) + o(1)).
"""
import math
from typing import Tuple

from scipy.stats import norm

from ..errors import InvalidConfig
from .alpha import v_funcs


def tail_approx_check(x: float, r: float, p: int) -> Tuple[float, float]:
    """(log_p F1((F0)^-1(p^-x)), v_minus(x)) with F0 = N(0,1), F1 = N(sqrt(2 r log p), 1)."""
    if p < 3:
        raise InvalidConfig(f"p={p} must be at least 3")
    if r < 0:
        raise InvalidConfig(f"r={r} must be nonnegative")
    log_p = math.log(p)
    if x < math.log(2.0) / log_p:
        raise InvalidConfig(f"x={x} is below log_p 2 for p={p}")
    quantile = norm.ppf(math.exp(-x * log_p))
    lhs = float(norm.logcdf(quantile - math.sqrt(2.0 * r * log_p))) / log_p
    v_minus, _ = v_funcs(x, r)
    return lhs, float(v_minus)
