"""
Rare/weak calibration: pi_k = p^-beta_k, eps = pi1 pi2 + p^-beta.
"""
from typing import NamedTuple

from ..dep_types.theory import CalibrationParams


class Calibration(NamedTuple):
    pi1: float
    pi2: float
    eps: float
    n1: int
    n2: int
    n12: int


def calibrate(p: int, beta: float, beta1: float, beta2: float) -> Calibration:
    """Rates and nearest-integer signal counts for a calibrated setting."""
    params = CalibrationParams(p=p, beta=beta, beta1=beta1, beta2=beta2)
    n1, n2, n12 = params.signal_counts()
    return Calibration(params.pi1, params.pi2, params.eps, n1, n2, n12)
