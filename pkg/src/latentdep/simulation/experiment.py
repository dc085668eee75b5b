"""
Fixed-effect Monte Carlo experiments.

The indicators (and heterogeneous alternative parameters, if any) are drawn
once per experiment; only the statistics are redrawn per replicate. Every
random stream is derived from the master seed:

    (seed, 0)      latent assignment
    (seed, 1, k)   heterogeneous alternative of sequence k
    (seed, 2, r)   statistics of replicate r
    (seed, 3, r)   permutation replicates of replicate r
    (seed, 4)      higher-criticism null distribution
"""
import logging
import math
import sys
import time
from typing import Callable, Dict, List, Optional

import pandas as pd
from tqdm import tqdm

from ..dep_types.core import PairedStatistics
from ..dep_types.simulation import ExperimentConfig, ExperimentReport, MethodKind, MethodSummary, MixtureSpec
from ..errors import DegenerateInput
from ..inference.permutation import permutation_pvalue
from ..seeding import derive_seed
from .baselines import hc_null_distribution, hc_pvalue, hc_stat, spearman_test, two_sided_pvalues
from .latent import assign_latent
from .sampling import heterogeneous_alternative, sample_pairs, with_alternative

logger = logging.getLogger(__name__)

PValueFn = Callable[[PairedStatistics, int], float]


def _fixed_mixture(cfg: ExperimentConfig) -> MixtureSpec:
    models = []
    for k, model in enumerate(cfg.mixture.sequences(), start=1):
        if model.heterogeneous:
            model = with_alternative(model, heterogeneous_alternative(cfg.p, derive_seed(cfg.seed, 1, k)))
        models.append(model)
    return MixtureSpec(first=models[0], second=models[1])


def _method_pvalues(cfg: ExperimentConfig) -> Dict[MethodKind, PValueFn]:
    def permutation(kind: MethodKind) -> PValueFn:
        def run(pairs: PairedStatistics, r: int) -> float:
            perm_cfg = cfg.permutation.model_copy(
                update={"seed": derive_seed(cfg.seed, 3, r), "keep_replicates": False}
            )
            return permutation_pvalue(pairs, perm_cfg, kind).p_value  # type: ignore[arg-type]
        return run

    def spearman(pairs: PairedStatistics, r: int) -> float:
        try:
            return spearman_test(pairs)[1]
        except DegenerateInput:
            return 1.0

    fns: Dict[MethodKind, PValueFn] = {}
    for method in cfg.methods:
        if method in ("dhat", "max"):
            fns[method] = permutation(method)
        elif method == "spearman":
            fns[method] = spearman
        elif method == "hc":
            null = hc_null_distribution(cfg.p, cfg.hc_reps, derive_seed(cfg.seed, 4))
            fns[method] = lambda pairs, r, null=null: hc_pvalue(hc_stat(two_sided_pvalues(pairs.t1)), null)
    return fns


def run_experiment(cfg: ExperimentConfig, progress: bool = False) -> ExperimentReport:
    """Rejection counts at level alpha (reject when p-value <= alpha) for each method."""
    n1, n2, n12 = cfg.counts()
    assign = assign_latent(cfg.p, n1, n2, n12, cfg.hypothesis, derive_seed(cfg.seed, 0))
    n12 = assign.n12
    mixture = _fixed_mixture(cfg)
    fns = _method_pvalues(cfg)
    rho = cfg.rho if cfg.design == "ar1" else 0.0
    logger.info(
        f"Experiment '{cfg.label}': p={cfg.p}, R={cfg.replicates}, {cfg.hypothesis}, "
        f"counts=({n1}, {n2}, {n12}), methods={cfg.methods}"
    )

    rejections = {method: 0 for method in cfg.methods}
    start = time.perf_counter()
    replicates = tqdm(
        range(cfg.replicates),
        desc=cfg.label or "replicates",
        unit="rep",
        file=sys.stderr,
        disable=not progress,
    )
    for r in replicates:
        pairs = sample_pairs(assign, mixture, derive_seed(cfg.seed, 2, r), rho=rho)
        for method, fn in fns.items():
            if fn(pairs, r) <= cfg.alpha:
                rejections[method] += 1
    elapsed = time.perf_counter() - start

    summaries: List[MethodSummary] = []
    for method in cfg.methods:
        rate = rejections[method] / cfg.replicates
        summaries.append(MethodSummary(
            method=method,
            rejections=rejections[method],
            replicates=cfg.replicates,
            rate=rate,
            std_error=math.sqrt(rate * (1.0 - rate) / cfg.replicates),
        ))
        logger.info(f"  {method}: {rejections[method]}/{cfg.replicates} rejections")

    return ExperimentReport(
        config=cfg,
        n1=n1,
        n2=n2,
        n12=n12,
        methods=summaries,
        seconds_per_replicate=(elapsed / cfg.replicates) if cfg.timing else None,
    )


def reports_to_csv(reports: List[ExperimentReport], digits: int = 2) -> str:
    """One row per method, one column per setting label, rejection rates as cells."""
    columns: Dict[str, Dict[str, Optional[float]]] = {}
    for i, report in enumerate(reports):
        label = report.config.label or f"setting{i + 1}"
        columns[label] = {s.method: round(s.rate, digits) for s in report.methods}
    table = pd.DataFrame(columns)
    table.index.name = "method"
    return table.to_csv(lineterminator="\n", float_format=f"%.{digits}f")
