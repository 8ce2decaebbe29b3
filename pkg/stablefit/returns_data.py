"""
Returns Data Loading
Reads price columns from CSV or Excel files and turns them into return series
"""

import logging
import os
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .column_mapping import COLUMN_REMAP, DATE, apply_column_remap, default_price_column
from .config import DEFAULTS
from .errors import (
    EmptyInputError,
    InsufficientDataError,
    InvalidParameterError,
    MissingColumnError,
    MissingFileError,
    NonPositivePriceError,
    ParseFailureError,
)

logger = logging.getLogger(__name__)

RETURN_KINDS = ("log", "simple", "none")
EXCEL_SUFFIXES = (".xlsx", ".xlsm", ".xls")


def read_price_frame(source, has_header=True, filename=None):
    """
    Raw table as strings (CSV) or cells (Excel), with header aliases remapped.
    `source` is a path or an open binary file (e.g. a Streamlit upload); `filename`
    decides CSV vs Excel for file objects.
    """
    if isinstance(source, (str, os.PathLike)):
        source = os.fspath(source)
        if not os.path.isfile(source):
            raise MissingFileError(f"file not found: {source}")
        if os.path.getsize(source) == 0:
            raise EmptyInputError(f"file is empty: {source}")
        filename = source
    label = filename or "<upload>"

    header = 0 if has_header else None
    try:
        if str(label).lower().endswith(EXCEL_SUFFIXES):
            df = pd.read_excel(source, header=header)
        else:
            df = pd.read_csv(source, header=header, dtype=str, skipinitialspace=True, skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        raise EmptyInputError(f"file has no data: {label}") from None
    except UnicodeDecodeError as exc:
        raise ParseFailureError(f"{label} is not UTF-8 text (byte {exc.start})") from None
    except pd.errors.ParserError as exc:
        detail = " ".join(str(exc).split()) or "malformed table"
        raise ParseFailureError(f"cannot read {label}: {detail}") from None

    if has_header:
        df, changes = apply_column_remap(df)
        if changes:
            logger.debug("column remap: %s", changes)
    if df.empty:
        raise EmptyInputError(f"file has no data rows: {label}")
    return df


def _resolve_column(df, column, has_header):
    if column is None:
        return default_price_column(df) if has_header else df.columns[0]
    if column in df.columns:
        return column
    if has_header and COLUMN_REMAP.get(column) in df.columns:
        return COLUMN_REMAP[column]
    try:
        index = int(column)
    except (TypeError, ValueError):
        raise MissingColumnError(f"column {column!r} not found; available: {list(df.columns)}") from None
    if not 0 <= index < len(df.columns):
        raise MissingColumnError(f"column index {index} out of range (0..{len(df.columns) - 1})")
    return df.columns[index]


def _parse_column(df, name, has_header):
    raw = df[name]
    if raw.dtype == object:
        raw = raw.astype(str).str.strip()
    values = pd.to_numeric(raw, errors="coerce")
    bad = values.isna() | ~np.isfinite(values.to_numpy(dtype=float))
    if bad.any():
        position = int(np.argmax(bad.to_numpy()))
        row = position + (2 if has_header else 1)
        raise ParseFailureError(
            f"cannot parse {raw.iloc[position]!r} as a number",
            row=row,
            column=name,
        )
    return values.to_numpy(dtype=float)


def column_values(df, column=None, has_header=True):
    """(resolved column name, float values) of one column of a price frame."""
    name = _resolve_column(df, column, has_header)
    return name, _parse_column(df, name, has_header)


def load_csv(path, column=None, has_header=True):
    """
    One numeric column of a CSV (or Excel) file.
    Without `column` the adjusted close is used, then close, then the first non-date column.
    Row numbers in parse errors count file lines from 1.
    """
    df = read_price_frame(path, has_header)
    name = _resolve_column(df, column, has_header)
    values = _parse_column(df, name, has_header)
    logger.info("load_csv: %d values from %s [%s]", values.size, path, name)
    return values


def load_matrix(path, columns=None, has_header=True):
    """n x d matrix from several columns; all non-date columns when `columns` is None."""
    df = read_price_frame(path, has_header)
    if columns:
        names = [_resolve_column(df, c, has_header) for c in columns]
    else:
        names = [c for c in df.columns if c != DATE]
    if not names:
        raise MissingColumnError(f"no numeric columns in {path}")
    return np.column_stack([_parse_column(df, name, has_header) for name in names])


def _check_prices(prices):
    prices = np.asarray(prices, dtype=float)
    if prices.shape[0] < 2:
        raise InsufficientDataError(f"need at least 2 prices, got {prices.shape[0]}")
    if np.any(prices <= 0.0):
        position = int(np.argmax((prices <= 0.0).reshape(prices.shape[0], -1).any(axis=1)))
        raise NonPositivePriceError(f"price at position {position} is not positive")
    return prices


def to_log_returns(prices):
    """r_t = ln(p_t / p_{t-1}); works column-wise on a matrix."""
    return np.diff(np.log(_check_prices(prices)), axis=0)


def to_simple_returns(prices):
    prices = _check_prices(prices)
    return prices[1:] / prices[:-1] - 1.0


def to_returns(prices, kind="log"):
    if kind == "log":
        return to_log_returns(prices)
    if kind == "simple":
        return to_simple_returns(prices)
    if kind == "none":
        return np.asarray(prices, dtype=float)
    raise InvalidParameterError(f"unknown returns kind {kind!r}; choose from {', '.join(RETURN_KINDS)}")


@dataclass(frozen=True, eq=False)
class ReturnsSeries:
    values: np.ndarray
    source: str
    column: str
    kind: str = "log"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("returns must be finite")
        if values.size < DEFAULTS["min_returns"]:
            raise InsufficientDataError(
                f"need at least {DEFAULTS['min_returns']} returns, got {values.size}"
            )
        object.__setattr__(self, "values", values)

    @property
    def n(self):
        return self.values.size


def returns_series(df, column=None, has_header=True, kind="log", source="<upload>"):
    """ReturnsSeries of one price column of an already loaded frame."""
    name, prices = column_values(df, column, has_header)
    return ReturnsSeries(to_returns(prices, kind), str(source), str(name), kind)


def load_returns_series(path, column=None, has_header=True, kind="log"):
    df = read_price_frame(path, has_header)
    series = returns_series(df, column, has_header, kind, os.fspath(path))
    logger.info("load_returns_series: %d %s returns from %s [%s]", series.n, kind, path, series.column)
    return series
