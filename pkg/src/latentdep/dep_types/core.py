"""
Core data types for paired test-statistic sequences, the dependence
statistic and its permutation inference.

Arrays are stored as read-only numpy arrays so that values can be shared
across concurrent callers once constructed.
"""
from typing import Any, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import InvalidConfig, LengthMismatch, NonFiniteValue, TooFewPoints

# --- Enums and Literals ---

StatisticKind = Literal[
    "dhat",  # supremum-type dependence statistic
    "max",  # max_j min(t1[j], t2[j])
    "spearman",  # rank correlation
]

PermutationScheme = Literal[
    "full_shuffle",
    "cyclic_shift",
]

DEFAULT_TRUNCATION = 1000
MAX_SEED = 2**64 - 1


def frozen_array(value: Any, dtype: Any = np.float64) -> np.ndarray:
    """Copy into a one-dimensional read-only array."""
    arr = np.array(value, dtype=dtype)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"expected a one-dimensional array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


# --- Observed data ---

class PairedStatistics(BaseModel):
    """Two index-paired sequences of test statistics t1[j], t2[j]."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t1: np.ndarray
    t2: np.ndarray

    @field_validator("t1", "t2", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_values(self) -> "PairedStatistics":
        if self.t1.size != self.t2.size:
            raise LengthMismatch(f"t1 has {self.t1.size} values but t2 has {self.t2.size}")
        if self.t1.size == 0:
            raise TooFewPoints("paired statistics are empty")
        for k, arr in ((1, self.t1), (2, self.t2)):
            bad = np.flatnonzero(~np.isfinite(arr))
            if bad.size:
                raise NonFiniteValue(k, int(bad[0]), float(arr[bad[0]]))
        return self

    @property
    def p(self) -> int:
        return int(self.t1.size)

    def swapped(self) -> "PairedStatistics":
        return PairedStatistics.model_construct(t1=self.t2, t2=self.t1)


class RankedPairs(BaseModel):
    """
    Rank preprocessing of a PairedStatistics.

    order_k sorts t_k ascending; rank_k uses the max-rank convention under
    ties; distinct_k are the deduplicated ascending order statistics;
    level_k[j] is the position of t_k[j] in distinct_k; counts_k[i] is the
    survival count #{j : t_k[j] >= distinct_k[i]}.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    source: PairedStatistics
    order1: np.ndarray
    order2: np.ndarray
    rank1: np.ndarray
    rank2: np.ndarray
    distinct1: np.ndarray
    distinct2: np.ndarray
    level1: np.ndarray
    level2: np.ndarray
    counts1: np.ndarray
    counts2: np.ndarray

    @property
    def p(self) -> int:
        return self.source.p

    def permute_first(self, perm: np.ndarray) -> "RankedPairs":
        """Ranked view of (t1[perm], t2) without sorting again."""
        perm = np.asarray(perm, dtype=np.int64)
        inverse = np.empty_like(perm)
        inverse[perm] = np.arange(perm.size, dtype=np.int64)
        t1 = self.source.t1[perm]
        t1.setflags(write=False)
        source = PairedStatistics.model_construct(t1=t1, t2=self.source.t2)
        return self.model_copy(update={
            "source": source,
            "order1": inverse[self.order1],
            "rank1": self.rank1[perm],
            "level1": self.level1[perm],
        })


class TruncationConfig(BaseModel):
    """Number of top distinct order statistics searched per sequence."""
    model_config = ConfigDict(frozen=True)

    m1: int = Field(ge=1)
    m2: int = Field(ge=1)

    @classmethod
    def default(cls, p: int) -> "TruncationConfig":
        m = max(1, min(p, DEFAULT_TRUNCATION))
        return cls(m1=m, m2=m)

    @classmethod
    def full(cls, p: int) -> "TruncationConfig":
        return cls(m1=p, m2=p)

    def check(self, p: int) -> None:
        if self.m1 > p or self.m2 > p:
            raise InvalidConfig(f"truncation (m1={self.m1}, m2={self.m2}) exceeds p={p}")

    def swapped(self) -> "TruncationConfig":
        return TruncationConfig(m1=self.m2, m2=self.m1)


class DetectionResult(BaseModel):
    """Value of the dependence statistic and where on the grid it is attained."""
    model_config = ConfigDict(frozen=True)

    statistic: float = Field(ge=0.0)
    argmax_cell: Tuple[int, int]  # 1-based ascending distinct indices (l, m)
    argmax_thresholds: Tuple[float, float]
    truncation: TruncationConfig  # effective truncation
    cells_evaluated: int = Field(ge=0)


# --- Inference ---

class PermutationConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    replicates: int
    scheme: PermutationScheme = "full_shuffle"
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    truncation: Optional[TruncationConfig] = None  # None: TruncationConfig.default(p)
    keep_replicates: bool = True

    @field_validator("replicates", mode="after")
    @classmethod
    def _check_replicates(cls, value: int) -> int:
        if value < 1:
            raise InvalidConfig(f"permutation replicates must be >= 1, got {value}")
        return value

    def truncation_for(self, p: int) -> TruncationConfig:
        return self.truncation if self.truncation is not None else TruncationConfig.default(p)


class PermutationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    statistic: StatisticKind
    observed_statistic: float
    observed: Optional[DetectionResult] = None  # set for statistic == "dhat"
    replicates: int
    exceed_count: int = Field(ge=0)
    p_value: float
    replicate_statistics: Optional[List[float]] = None
    seed: int
    scheme: PermutationScheme

    @model_validator(mode="after")
    def _check_p_value(self) -> "PermutationResult":
        if self.exceed_count > self.replicates:
            raise InvalidConfig("exceed_count cannot exceed the number of replicates")
        if self.p_value != (1 + self.exceed_count) / (self.replicates + 1):
            raise InvalidConfig("p_value must equal (1 + exceed_count) / (B + 1)")
        return self


class PairwiseResult(BaseModel):
    """Permutation result for one pair of named sequences, with Bonferroni adjustment."""
    model_config = ConfigDict(frozen=True)

    first: str
    second: str
    result: PermutationResult
    adjusted_p_value: float
