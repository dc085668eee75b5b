"""
Closed-form decision rules: the advisory asymptotic tail and the adaptive threshold test.
"""
import math

from ..errors import InvalidConfig


def asymptotic_pvalue(dhat: float, p: int) -> float:
    """
    exp(-x^2) with x = dhat / sqrt(log p).

    Extreme-value limits of this kind converge slowly; treat the value as
    advisory and prefer permutation p-values.
    """
    if p < 3:
        raise InvalidConfig(f"asymptotic p-value needs p >= 3 so that log p > 1, got {p}")
    if dhat < 0:
        raise InvalidConfig(f"statistic must be nonnegative, got {dhat}")
    x = dhat / math.sqrt(math.log(p))
    return math.exp(-x * x)


def adaptive_threshold(p: int) -> float:
    """log p (log log p)^2 + 3 (log log p)^2, natural logs."""
    if p < 16:
        raise InvalidConfig(f"adaptive test needs p >= 16, got {p}")
    loglog = math.log(math.log(p))
    return math.log(p) * loglog**2 + 3.0 * loglog**2


def adaptive_test(dhat: float, p: int) -> bool:
    """Reject independence iff dhat exceeds the adaptive threshold."""
    return dhat > adaptive_threshold(p)
