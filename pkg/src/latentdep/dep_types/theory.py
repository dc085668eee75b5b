"""
Types for the calibrated rare/weak asymptotic model and detection-boundary verdicts.
"""
import math
from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import InvalidCalibration


def nearest_count(x: float) -> int:
    """Nearest integer, halves rounded up."""
    return int(math.floor(x + 0.5))


def check_sparsity(beta1: float, beta2: float) -> None:
    for k, bk in ((1, beta1), (2, beta2)):
        if not (0.5 <= bk <= 1.0):
            raise InvalidCalibration(f"beta{k}={bk} must lie in [1/2, 1]")


def check_dependence(beta: float, beta1: float, beta2: float) -> None:
    check_sparsity(beta1, beta2)
    if not (0.5 < beta < 1.0):
        raise InvalidCalibration(f"beta={beta} must lie in (1/2, 1)")
    if max(beta1, beta2) > beta:
        raise InvalidCalibration(f"max(beta1, beta2)={max(beta1, beta2)} exceeds beta={beta}")


def check_strength(r1: float, r2: float) -> None:
    for k, rk in ((1, r1), (2, r2)):
        if not (math.isfinite(rk) and rk >= 0.0):
            raise InvalidCalibration(f"r{k}={rk} must be a finite nonnegative number")


class CalibrationParams(BaseModel):
    """
    pi_k = p^-beta_k, eps = pi1 pi2 + p^-beta, with Gaussian alternatives
    N(sqrt(2 r_k log p), 1). p is used only to convert rates into counts.
    """
    model_config = ConfigDict(frozen=True)

    p: int = 100_000
    beta: float
    beta1: float
    beta2: float
    r1: float = 0.0
    r2: float = 0.0

    @model_validator(mode="after")
    def _check_constraints(self) -> "CalibrationParams":
        if self.p < 2:
            raise InvalidCalibration(f"p={self.p} must be at least 2")
        check_dependence(self.beta, self.beta1, self.beta2)
        check_strength(self.r1, self.r2)
        return self

    @property
    def pi1(self) -> float:
        return float(self.p) ** -self.beta1

    @property
    def pi2(self) -> float:
        return float(self.p) ** -self.beta2

    @property
    def eps(self) -> float:
        return self.pi1 * self.pi2 + float(self.p) ** -self.beta

    def signal_counts(self) -> Tuple[int, int, int]:
        """(n1, n2, n12) = nearest integers to p pi1, p pi2 and p^(1 - beta)."""
        p = float(self.p)
        return (
            nearest_count(p * self.pi1),
            nearest_count(p * self.pi2),
            nearest_count(p ** (1.0 - self.beta)),
        )


class RegionVerdict(BaseModel):
    """Numerically evaluated detectable / undetectable conditions for one calibration."""
    model_config = ConfigDict(frozen=True)

    q_values: Tuple[float, float, float, float]
    detectable: bool
    u1_values: Tuple[float, float]
    u2_value: float
    undetectable: bool
    grid_resolution: int
    tol: float

    @model_validator(mode="after")
    def _exclusive(self) -> "RegionVerdict":
        if self.detectable and self.undetectable:
            raise InvalidCalibration("a calibration cannot be both detectable and undetectable")
        return self
