"""
Two-column TSV input: one row per feature, `t1<TAB>t2`, optional header.
"""
import logging
import re
from pathlib import Path
from typing import Literal, Optional

import numpy as np
import pandas as pd

from ..dep_types.core import PairedStatistics
from ..errors import InputNotFound, MalformedInput

logger = logging.getLogger(__name__)

Transform = Literal["none", "neglog10"]

_PARSER_LINE = re.compile(r"line (\d+)")


def _is_number(text: str) -> bool:
    try:
        float(text)
    except (TypeError, ValueError):
        return False
    return True


def _undecodable_line(path: Path) -> Optional[int]:
    """1-based line of the first byte that is not valid UTF-8."""
    raw = path.read_bytes()
    try:
        raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        return raw.count(b"\n", 0, exc.start) + 1
    return None


def read_pairs_tsv(path: Path, transform: Transform = "none") -> PairedStatistics:
    """
    Read paired statistics. A first row with a non-numeric field is taken
    as a header. Missing or non-numeric values fail with the 1-based line
    number. With transform="neglog10" the values are p-values in (0, 1]
    and are mapped to -log10(q).
    """
    if not path.is_file():
        raise InputNotFound(f"input file not found: {path}")
    try:
        frame = pd.read_csv(
            path,
            sep="\t",
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )
    except UnicodeDecodeError as exc:
        raise MalformedInput(f"input is not valid UTF-8 ({exc.reason})", _undecodable_line(path))
    except pd.errors.EmptyDataError:
        raise MalformedInput("input is empty")
    except pd.errors.ParserError as exc:
        match = _PARSER_LINE.search(str(exc))
        raise MalformedInput(f"expected 2 tab-separated fields ({exc})", int(match.group(1)) if match else None)

    if frame.shape[1] != 2:
        raise MalformedInput(f"expected 2 tab-separated columns, found {frame.shape[1]}", 1)

    first_line = 1
    if not all(_is_number(v) for v in frame.iloc[0]):
        logger.debug(f"Treating first row of {path} as a header: {list(frame.iloc[0])}")
        frame = frame.iloc[1:]
        first_line = 2
    if frame.empty:
        raise MalformedInput("input has a header but no data rows")

    values = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(values).all(axis=1))
    if bad.size:
        row = int(bad[0])
        raise MalformedInput(f"non-numeric or missing value in {list(frame.iloc[row])}", first_line + row)

    if transform == "neglog10":
        outside = np.flatnonzero(((values <= 0.0) | (values > 1.0)).any(axis=1))
        if outside.size:
            row = int(outside[0])
            raise MalformedInput(f"p-values must lie in (0, 1], got {list(frame.iloc[row])}", first_line + row)
        values = -np.log10(values)

    logger.info(f"Read {values.shape[0]} pairs from {path}")
    return PairedStatistics(t1=values[:, 0], t2=values[:, 1])
