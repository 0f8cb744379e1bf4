"""
CSV input and output.

Input files carry a header row (`x,value` or `x,y,value`); lines starting
with '#' are skipped. Output files start with one '#' line recording the
configuration, then a pandas-written table with shortest round-trip floats.
"""

import logging

import numpy as np
import pandas as pd

from ddp.config import CSV_LINE_TERMINATOR
from ddp.diffop2d import make_grid
from ddp.errors import DomainError
from ddp.localrep import Signal

logger = logging.getLogger(__name__)

UNIFORM_RTOL = 1e-6


def format_float(value):
    """Shortest round-trip decimal; empty for missing values."""
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return ''
    return repr(float(value))


def _read(path, columns):
    try:
        df = pd.read_csv(path, comment='#', encoding='utf-8')
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DomainError(f"cannot read CSV {path}: {e}") from None
    df.columns = [str(c).strip() for c in df.columns]
    missing = [c for c in columns if c not in df.columns]
    if missing:
        raise DomainError(f"CSV {path} is missing column(s) {', '.join(missing)}; expected header {','.join(columns)}")
    try:
        df = df[list(columns)].astype(np.float64)
    except ValueError as e:
        raise DomainError(f"CSV {path} has non-numeric values: {e}") from None
    if df.isna().any().any():
        raise DomainError(f"CSV {path} has empty cells")
    return df


def _uniform_step(values, label):
    steps = np.diff(values)
    if len(steps) == 0:
        raise DomainError(f"{label} needs at least 2 distinct values")
    step = float(np.median(steps))
    if not step > 0 or np.any(np.abs(steps - step) > UNIFORM_RTOL * step):
        raise DomainError(f"{label} values must be uniformly spaced")
    return step


def read_signal(path):
    """Uniform 1D signal from an `x,value` file sorted by x."""
    df = _read(path, ('x', 'value'))
    xs = df['x'].to_numpy()
    if np.any(np.diff(xs) <= 0):
        raise DomainError(f"CSV {path} rows must be sorted by strictly increasing x")
    spacing = _uniform_step(xs, 'x')
    logger.info(f"Read {len(df)} samples from {path} (spacing {spacing:g})")
    return Signal.from_values(xs[0], spacing, df['value'].to_numpy())


def read_truth(path):
    """Optional `truth` column of a signal file: row n holds the exact f^(n) at the middle sample.

    Returns None without such a column; empty cells are NaN (unknown).
    """
    try:
        df = pd.read_csv(path, comment='#', encoding='utf-8')
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DomainError(f"cannot read CSV {path}: {e}") from None
    df.columns = [str(c).strip() for c in df.columns]
    if 'truth' not in df.columns:
        return None
    truth = pd.to_numeric(df['truth'], errors='coerce')
    if (truth.isna() & df['truth'].notna()).any():
        raise DomainError(f"CSV {path} has non-numeric values in column truth")
    logger.info(f"Read {int(truth.notna().sum())} derivative truth values from {path}")
    return tuple(truth.to_numpy(dtype=np.float64))


def read_grid(path):
    """(SampleGrid2D, samples) from an `x,y,value` file covering a square grid."""
    df = _read(path, ('x', 'y', 'value')).sort_values(['x', 'y'], kind='mergesort')
    xs = np.unique(df['x'].to_numpy())
    ys = np.unique(df['y'].to_numpy())
    side = len(xs)
    if len(ys) != side or len(df) != side * side:
        raise DomainError(f"CSV {path} must hold a full square grid, got {len(xs)} x {len(ys)} axes and {len(df)} rows")
    h = _uniform_step(xs, 'x')
    hy = _uniform_step(ys, 'y')
    if abs(h - hy) > UNIFORM_RTOL * h:
        raise DomainError(f"grid spacing differs between x ({h:g}) and y ({hy:g})")
    grid = make_grid(float(xs.mean()), float(ys.mean()), h, side)
    logger.info(f"Read {side}x{side} grid from {path} (spacing {h:g})")
    return grid, df['value'].to_numpy()


def format_csv(frame, header):
    """CSV text with a leading '# header' line."""
    out = frame.copy()
    for column in out.columns:
        if pd.api.types.is_float_dtype(out[column]):
            out[column] = out[column].map(format_float)
    body = out.to_csv(index=False, lineterminator=CSV_LINE_TERMINATOR)
    return f"# {header}{CSV_LINE_TERMINATOR}{body}"


def write_csv(frame, header, path):
    text = format_csv(frame, header)
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return text
