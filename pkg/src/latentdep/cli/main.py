"""
latentdep command line: detect, simulate, boundary and bench subcommands.

Results go to stdout (or --out) and logs to stderr, so identical
invocations produce byte-identical output.
"""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import TypeAdapter

from ..boundary import boundary_curve, write_boundary_csv
from ..config import configure_logging
from ..dep_types.core import PairedStatistics, PermutationConfig, TruncationConfig
from ..dep_types.reports import BenchReport, CliInvocation, DetectReport
from ..dep_types.simulation import Distribution, ExperimentConfig, ExperimentReport, MixtureSpec, SequenceModel
from ..empirical import dstat_fast, preprocess
from ..errors import InputNotFound, LatentDepError, UsageError
from ..inference import adaptive_test, asymptotic_pvalue, permutation_pvalue
from ..seeding import derive_rng
from ..simulation.experiment import reports_to_csv, run_experiment
from ..simulation.presets import table1, table3
from .tsv import read_pairs_tsv

logger = logging.getLogger(__name__)

SCHEMES = {"shuffle": "full_shuffle", "cyclic": "cyclic_shift"}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


# --- Argument types ---

def _bounded(cast: Callable[[str], Any], lo: Optional[float] = None, hi: Optional[float] = None,
             lo_open: bool = False, hi_open: bool = False) -> Callable[[str], Any]:
    def parse(text: str) -> Any:
        try:
            value = cast(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}")
        if lo is not None and (value < lo or (lo_open and value == lo)):
            raise argparse.ArgumentTypeError(f"{value} is below the allowed range")
        if hi is not None and (value > hi or (hi_open and value == hi)):
            raise argparse.ArgumentTypeError(f"{value} is above the allowed range")
        return value
    return parse


def _float_list(item: Callable[[str], Any]) -> Callable[[str], List[float]]:
    def parse(text: str) -> List[float]:
        return [item(part) for part in text.split(",") if part.strip()]
    return parse


positive_int = _bounded(int, lo=1)
seed_int = _bounded(int, lo=0, hi=2**64 - 1)
unit_interval = _bounded(float, lo=0.0, hi=1.0, lo_open=True, hi_open=True)
sparsity = _bounded(float, lo=0.5, hi=1.0)
strength = _bounded(float, lo=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latentdep", description="Detect latent dependence between paired test statistics.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    detect = sub.add_parser("detect", help="Dependence statistic and p-values for a two-column TSV")
    detect.add_argument("--input", required=True, type=Path)
    detect.add_argument("--out", type=Path)
    detect.add_argument("--transform", choices=["none", "neglog10"], default="none")
    detect.add_argument("--perms", type=positive_int, default=10000)
    detect.add_argument("--scheme", choices=list(SCHEMES), default="shuffle")
    detect.add_argument("--seed", type=seed_int, default=0)
    detect.add_argument("--m1", type=positive_int, default=1000)
    detect.add_argument("--m2", type=positive_int, default=1000)
    detect.add_argument("--timing", action="store_true")

    simulate = sub.add_parser("simulate", help="Monte Carlo rejection rates for preset or custom settings")
    simulate.add_argument("--preset", choices=["table1", "table3", "custom"], default="table1")
    simulate.add_argument("--hypothesis", choices=["null", "alternative"], default="alternative")
    simulate.add_argument("--reps", type=positive_int, default=400)
    simulate.add_argument("--perms", type=positive_int, default=200)
    simulate.add_argument("--alpha", type=unit_interval, default=0.05)
    simulate.add_argument("--seed", type=seed_int, default=0)
    simulate.add_argument("--p", type=_bounded(int, lo=2))
    simulate.add_argument("--beta1", type=sparsity, help="table3: run only this beta1")
    simulate.add_argument("--n1", type=_bounded(int, lo=0))
    simulate.add_argument("--n2", type=_bounded(int, lo=0))
    simulate.add_argument("--n12", type=_bounded(int, lo=0), default=2)
    simulate.add_argument("--mu", type=float, default=3.0, help="custom: alternative mean")
    simulate.add_argument("--sigma", type=_bounded(float, lo=0.0, lo_open=True), default=1.0)
    simulate.add_argument("--design", choices=["independent", "ar1"], default="independent")
    simulate.add_argument("--rho", type=_bounded(float, lo=0.0, hi=1.0, hi_open=True), default=0.0)
    simulate.add_argument("--format", choices=["json", "csv"], default="json")
    simulate.add_argument("--out", type=Path)
    simulate.add_argument("--timing", action="store_true")
    simulate.add_argument("--progress", action="store_true")

    boundary = sub.add_parser("boundary", help="Dependence detection boundary beta* as CSV")
    boundary.add_argument("--beta1", type=_float_list(sparsity), default=[0.5])
    boundary.add_argument("--beta2", type=_float_list(sparsity), default=[0.5])
    boundary.add_argument("--r1", type=_float_list(strength), default=[0.25])
    boundary.add_argument("--r2", type=_float_list(strength), default=[0.25])
    boundary.add_argument("--res", type=_bounded(int, lo=2), default=512)
    boundary.add_argument("--tol", type=_bounded(float, lo=0.0, lo_open=True), default=1e-4)
    boundary.add_argument("--out", type=Path)

    bench = sub.add_parser("bench", help="Time the fast grid sweep on synthetic data")
    bench.add_argument("--p", type=_bounded(int, lo=2), default=1_000_000)
    bench.add_argument("--m", type=positive_int, default=1000)
    bench.add_argument("--seed", type=seed_int, default=0)
    return parser


def parse_args(argv: Sequence[str]) -> CliInvocation:
    args = vars(build_parser().parse_args(list(argv)))
    subcommand = args.pop("subcommand")
    input_path = args.pop("input", None)
    out_path = args.pop("out", None)
    if subcommand == "detect" and not input_path.is_file():
        raise InputNotFound(f"--input: file not found: {input_path}")
    if subcommand == "boundary":
        for flag in ("beta1", "beta2", "r1", "r2"):
            if not args[flag]:
                raise UsageError(f"--{flag}: expected at least one value")
    if subcommand == "simulate" and args["preset"] == "custom" and (args["n1"] is None or args["n2"] is None):
        raise UsageError("--preset custom: --n1 and --n2 are required")
    return CliInvocation(subcommand=subcommand, options=args, input_path=input_path, out_path=out_path)


# --- Subcommands ---

def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        out.write_text(text, encoding="utf-8")


def _detect(inv: CliInvocation) -> None:
    opts = inv.options
    assert inv.input_path is not None
    start = time.perf_counter()
    pairs = read_pairs_tsv(inv.input_path, opts["transform"])
    p = pairs.p
    cfg = PermutationConfig(
        replicates=opts["perms"],
        scheme=SCHEMES[opts["scheme"]],
        seed=opts["seed"],
        truncation=TruncationConfig(m1=min(opts["m1"], p), m2=min(opts["m2"], p)),
        keep_replicates=False,
    )
    result = permutation_pvalue(pairs, cfg, "dhat")
    observed = result.observed
    assert observed is not None
    stat = observed.statistic
    report = DetectReport(
        statistic=stat,
        t1_star=observed.argmax_thresholds[0],
        t2_star=observed.argmax_thresholds[1],
        p_value=result.p_value,
        p_value_asymptotic=asymptotic_pvalue(stat, p) if p >= 3 else None,
        adaptive_reject=adaptive_test(stat, p) if p >= 16 else None,
        perms=cfg.replicates,
        scheme=opts["scheme"],
        seed=cfg.seed,
        m1=observed.truncation.m1,
        m2=observed.truncation.m2,
        p=p,
        elapsed_ms=(time.perf_counter() - start) * 1e3 if opts["timing"] else None,
    )
    _emit(report.model_dump_json(indent=2) + "\n", inv.out_path)


def _simulation_configs(opts: Dict[str, Any]) -> List[ExperimentConfig]:
    preset = opts["preset"]
    common = dict(hypothesis=opts["hypothesis"], replicates=opts["reps"], perms=opts["perms"], seed=opts["seed"])
    if opts["p"] is not None:
        common["p"] = opts["p"]
    if preset == "table1":
        configs = table1(n12=opts["n12"], **common)
    elif preset == "table3":
        configs = table3(**common)
        if opts["beta1"] is not None:
            configs = [c for c in configs if c.calibration and c.calibration.beta1 == opts["beta1"]]
            if not configs:
                raise UsageError(f"--beta1: table3 has no setting with beta1={opts['beta1']}")
    else:
        model = SequenceModel(alternative=Distribution(mu=opts["mu"], sigma=opts["sigma"]))
        configs = [ExperimentConfig(
            label="custom",
            p=opts["p"] or 1000,
            replicates=opts["reps"],
            hypothesis=opts["hypothesis"],
            n1=opts["n1"],
            n2=opts["n2"],
            n12=opts["n12"] if opts["hypothesis"] == "alternative" else 0,
            mixture=MixtureSpec(first=model, second=model),
            permutation=PermutationConfig(replicates=opts["perms"]),
            seed=opts["seed"],
        )]
    updates = dict(alpha=opts["alpha"], design=opts["design"], rho=opts["rho"], timing=opts["timing"])
    return [c.model_copy(update=updates) for c in configs]


def _simulate(inv: CliInvocation) -> None:
    opts = inv.options
    reports = [run_experiment(cfg, progress=opts["progress"]) for cfg in _simulation_configs(opts)]
    if opts["format"] == "csv":
        text = reports_to_csv(reports)
    else:
        text = TypeAdapter(List[ExperimentReport]).dump_json(reports, indent=2).decode("utf-8") + "\n"
    _emit(text, inv.out_path)


def _boundary(inv: CliInvocation) -> None:
    opts = inv.options
    curve = boundary_curve(opts["beta1"], opts["beta2"], opts["r1"], opts["r2"], res=opts["res"], tol=opts["tol"])
    if inv.out_path is None:
        write_boundary_csv(curve, sys.stdout, res=opts["res"], tol=opts["tol"])
        sys.stdout.flush()
    else:
        write_boundary_csv(curve, inv.out_path, res=opts["res"], tol=opts["tol"])


def _bench(inv: CliInvocation) -> None:
    opts = inv.options
    p, seed = opts["p"], opts["seed"]
    rng = derive_rng(seed)
    pairs = PairedStatistics(t1=np.abs(rng.standard_normal(p)), t2=np.abs(rng.standard_normal(p)))
    m = min(opts["m"], p)
    start = time.perf_counter()
    ranked = preprocess(pairs)
    mid = time.perf_counter()
    result = dstat_fast(ranked, TruncationConfig(m1=m, m2=m))
    end = time.perf_counter()
    report = BenchReport(
        p=p,
        m1=result.truncation.m1,
        m2=result.truncation.m2,
        seed=seed,
        statistic=result.statistic,
        cells_evaluated=result.cells_evaluated,
        preprocess_ms=(mid - start) * 1e3,
        sweep_ms=(end - mid) * 1e3,
        elapsed_ms=(end - start) * 1e3,
    )
    _emit(report.model_dump_json(indent=2) + "\n", None)


COMMANDS: Dict[str, Callable[[CliInvocation], None]] = {
    "detect": _detect,
    "simulate": _simulate,
    "boundary": _boundary,
    "bench": _bench,
}


def run(inv: CliInvocation) -> int:
    """Execute a parsed invocation; returns the process exit status."""
    try:
        COMMANDS[inv.subcommand](inv)
    except LatentDepError as exc:
        logger.error(f"{inv.subcommand} failed: {exc}", exc_info=not isinstance(exc, (UsageError, InputNotFound)))
        return exc.exit_code
    except Exception as exc:
        logger.error(f"{inv.subcommand} failed unexpectedly: {exc}", exc_info=True)
        return 70
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    try:
        inv = parse_args(sys.argv[1:] if argv is None else argv)
    except LatentDepError as exc:
        logger.error(str(exc))
        return exc.exit_code
    return run(inv)
