"""
Preset experiment grids: independent tests at p = 1000 with heterogeneous
folded-normal signals, and single-sequence detection at p = 100000.
"""
import math
from typing import List

from ..dep_types.core import PermutationConfig, TruncationConfig
from ..dep_types.simulation import Distribution, ExperimentConfig, Hypothesis, MixtureSpec, SequenceModel
from ..dep_types.theory import CalibrationParams
from ..seeding import derive_seed

TABLE1_COUNTS = [(5, 5), (10, 5), (15, 5), (10, 10), (15, 10), (15, 15)]
TABLE3_BETA1 = [0.51, 0.6, 0.7]


def table1(
    hypothesis: Hypothesis = "null",
    n12: int = 2,
    replicates: int = 400,
    perms: int = 200,
    seed: int = 0,
    p: int = 1000,
) -> List[ExperimentConfig]:
    """One setting per (n1, n2); under the alternative n12 features are shared."""
    heterogeneous = SequenceModel(heterogeneous=True)
    mixture = MixtureSpec(first=heterogeneous, second=heterogeneous)
    configs = []
    for i, (n1, n2) in enumerate(TABLE1_COUNTS):
        configs.append(ExperimentConfig(
            label=f"({n1},{n2})",
            p=p,
            replicates=replicates,
            hypothesis=hypothesis,
            n1=n1,
            n2=n2,
            n12=min(n12, n1, n2) if hypothesis == "alternative" else 0,
            mixture=mixture,
            methods=["spearman", "max", "dhat"],
            permutation=PermutationConfig(replicates=perms, truncation=TruncationConfig.default(p)),
            seed=derive_seed(seed, i),
        ))
    return configs


def table3(
    hypothesis: Hypothesis = "alternative",
    replicates: int = 400,
    perms: int = 200,
    seed: int = 0,
    p: int = 100_000,
) -> List[ExperimentConfig]:
    """
    beta1 in {0.51, 0.6, 0.7}, beta2 = 1/2, beta = max(beta1, beta2) + 0.01.
    The first sequence's signals, |N(sqrt((2 beta1 - 1) log p), 1)|, sit on
    the single-sequence boundary; the second's, |N(sqrt(2 log p), 1)|, are strong.
    """
    log_p = math.log(p)
    strong = SequenceModel(alternative=Distribution(mu=math.sqrt(2.0 * log_p)))
    configs = []
    for i, beta1 in enumerate(TABLE3_BETA1):
        calib = CalibrationParams(p=p, beta=max(beta1, 0.5) + 0.01, beta1=beta1, beta2=0.5)
        weak = SequenceModel(alternative=Distribution(mu=math.sqrt((2.0 * beta1 - 1.0) * log_p)))
        configs.append(ExperimentConfig(
            label=f"beta1={beta1}",
            p=p,
            replicates=replicates,
            hypothesis=hypothesis,
            calibration=calib,
            mixture=MixtureSpec(first=weak, second=strong),
            methods=["hc", "spearman", "max", "dhat"],
            permutation=PermutationConfig(replicates=perms, truncation=TruncationConfig.default(p)),
            seed=derive_seed(seed, i),
        ))
    return configs
