"""
Data types for the two-group mixture simulator and the experiment runner.
"""
import math
from typing import Any, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from ..errors import CountOverflow, InvalidConfig
from .core import PermutationConfig, frozen_array
from .theory import CalibrationParams

# --- Enums and Literals ---

Hypothesis = Literal["null", "alternative"]

MethodKind = Literal[
    "dhat",
    "max",
    "spearman",
    "hc",  # higher criticism on the first sequence alone
]

DistributionFamily = Literal["normal", "folded_normal"]

Design = Literal[
    "independent",
    "ar1",  # serially correlated latent normals within each sequence
]


# --- Latent indicators ---

class LatentAssignment(BaseModel):
    """Non-null indicators I_kj, drawn once per experiment."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    i1: np.ndarray
    i2: np.ndarray
    n1: int
    n2: int
    n12: int
    hypothesis: Hypothesis
    seed: int

    @field_validator("i1", "i2", mode="before")
    @classmethod
    def _as_mask(cls, value: Any) -> np.ndarray:
        return frozen_array(value, dtype=bool)

    @model_validator(mode="after")
    def _check_counts(self) -> "LatentAssignment":
        if self.i1.size != self.i2.size:
            raise CountOverflow("indicator arrays differ in length")
        if int(self.i1.sum()) != self.n1 or int(self.i2.sum()) != self.n2:
            raise CountOverflow(f"indicator sums do not match n1={self.n1}, n2={self.n2}")
        if self.hypothesis == "alternative" and int(np.sum(self.i1 & self.i2)) < self.n12:
            raise CountOverflow(f"fewer than n12={self.n12} simultaneous non-nulls")
        return self

    @property
    def p(self) -> int:
        return int(self.i1.size)


# --- Mixture components ---

class Distribution(BaseModel):
    """normal(mu, sigma) or |normal(mu, sigma)|; sigma is a standard deviation."""
    model_config = ConfigDict(frozen=True)

    family: DistributionFamily = "folded_normal"
    mu: float = 0.0
    sigma: float = 1.0

    @model_validator(mode="after")
    def _check_params(self) -> "Distribution":
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma) and self.sigma > 0):
            raise InvalidConfig(f"invalid distribution parameters mu={self.mu}, sigma={self.sigma}")
        return self


class FeatureAlternative(BaseModel):
    """Per-feature alternative parameters (mu_j, sigma_j), read at the non-null indices."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    family: DistributionFamily = "folded_normal"
    mu: np.ndarray
    sigma: np.ndarray

    @field_validator("mu", "sigma", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_params(self) -> "FeatureAlternative":
        if self.mu.shape != self.sigma.shape:
            raise InvalidConfig("per-feature mu and sigma differ in length")
        if not (np.all(np.isfinite(self.mu)) and np.all(np.isfinite(self.sigma)) and np.all(self.sigma > 0)):
            raise InvalidConfig("per-feature parameters must be finite with sigma > 0")
        return self

    @field_serializer("mu", "sigma")
    def _to_list(self, value: np.ndarray) -> List[float]:
        return value.tolist()


class SequenceModel(BaseModel):
    """
    F0 and F1 for one sequence. With heterogeneous=True the experiment
    runner replaces `alternative` by per-feature parameters drawn once
    per experiment.
    """
    model_config = ConfigDict(frozen=True)

    null: Distribution = Field(default_factory=Distribution)
    alternative: Union[Distribution, FeatureAlternative] = Field(default_factory=Distribution)
    heterogeneous: bool = False


class MixtureSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    first: SequenceModel = Field(default_factory=SequenceModel)
    second: SequenceModel = Field(default_factory=SequenceModel)

    def sequences(self) -> Tuple[SequenceModel, SequenceModel]:
        return self.first, self.second


# --- Experiments ---

class ExperimentConfig(BaseModel):
    """One simulation setting: counts or a calibration, a mixture and the methods to compare."""
    model_config = ConfigDict(frozen=True)

    label: str = ""
    p: int
    replicates: int = 400
    alpha: float = 0.05
    hypothesis: Hypothesis = "alternative"
    n1: Optional[int] = None
    n2: Optional[int] = None
    n12: int = 0
    calibration: Optional[CalibrationParams] = None
    mixture: MixtureSpec = Field(default_factory=MixtureSpec)
    methods: List[MethodKind] = Field(default_factory=lambda: ["dhat", "max", "spearman"])
    permutation: PermutationConfig = Field(default_factory=lambda: PermutationConfig(replicates=200))
    hc_reps: int = 200
    design: Design = "independent"
    rho: float = 0.0
    seed: int = 0
    timing: bool = False

    @model_validator(mode="after")
    def _check_config(self) -> "ExperimentConfig":
        if self.p < 2:
            raise InvalidConfig(f"p={self.p} must be at least 2")
        if self.replicates < 1:
            raise InvalidConfig(f"replicate count must be at least 1, got {self.replicates}")
        if not (0.0 < self.alpha < 1.0):
            raise InvalidConfig(f"alpha={self.alpha} must lie in (0, 1)")
        if self.calibration is None and (self.n1 is None or self.n2 is None):
            raise InvalidConfig("give either n1 and n2 or a calibration")
        if not self.methods:
            raise InvalidConfig("at least one method is required")
        if not (0.0 <= self.rho < 1.0):
            raise InvalidConfig(f"rho={self.rho} must lie in [0, 1)")
        if self.hc_reps < 1:
            raise InvalidConfig(f"hc_reps must be at least 1, got {self.hc_reps}")
        return self

    def counts(self) -> Tuple[int, int, int]:
        """(n1, n2, n12); a calibration takes precedence over explicit counts."""
        if self.calibration is not None:
            return self.calibration.signal_counts()
        assert self.n1 is not None and self.n2 is not None
        return self.n1, self.n2, self.n12


class MethodSummary(BaseModel):
    method: MethodKind
    rejections: int = Field(ge=0)
    replicates: int = Field(ge=1)
    rate: float
    std_error: float

    @model_validator(mode="after")
    def _check_rate(self) -> "MethodSummary":
        if self.rate != self.rejections / self.replicates:
            raise InvalidConfig("rate must equal rejections / replicates")
        return self


class ExperimentReport(BaseModel):
    config: ExperimentConfig
    n1: int
    n2: int
    n12: int
    methods: List[MethodSummary]
    seconds_per_replicate: Optional[float] = None

    def rate(self, method: MethodKind) -> float:
        for summary in self.methods:
            if summary.method == method:
                return summary.rate
        raise KeyError(method)
