"""
Command-line invocation and report types. Report field names are part of
the stable output interface (see Docs/interfaces.md).
"""
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Subcommand = Literal["detect", "simulate", "boundary", "bench"]

CliScheme = Literal["shuffle", "cyclic"]


class CliInvocation(BaseModel):
    """A parsed and range-checked command line."""
    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    options: Dict[str, Any] = Field(default_factory=dict)
    input_path: Optional[Path] = None
    out_path: Optional[Path] = None


class DetectReport(BaseModel):
    statistic: float
    t1_star: float
    t2_star: float
    p_value: float
    p_value_asymptotic: Optional[float]  # None when p < 3
    adaptive_reject: Optional[bool]  # None when p < 16
    perms: int
    scheme: CliScheme
    seed: int
    m1: int
    m2: int
    p: int
    elapsed_ms: Optional[float] = None  # only with --timing


class BenchReport(BaseModel):
    p: int
    m1: int
    m2: int
    seed: int
    statistic: float
    cells_evaluated: int
    preprocess_ms: float
    sweep_ms: float
    elapsed_ms: float
