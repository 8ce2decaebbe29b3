"""Centralized column remapping for price files (Yahoo, broker and spreadsheet exports)."""

ADJ_CLOSE = "Adj_Close"
CLOSE = "Close"
DATE = "Date"

COLUMN_REMAP = {
    # Adjusted close
    "Adj Close": ADJ_CLOSE,
    "Adj. Close": ADJ_CLOSE,
    "Adj Close\n": ADJ_CLOSE,
    "adj_close": ADJ_CLOSE,
    "adjclose": ADJ_CLOSE,
    "AdjClose": ADJ_CLOSE,
    "Adjusted Close": ADJ_CLOSE,
    "adjusted_close": ADJ_CLOSE,
    "Fechamento Ajustado": ADJ_CLOSE,
    "Fech. Ajustado": ADJ_CLOSE,

    # Close
    "close": CLOSE,
    "Close\n": CLOSE,
    "Close*": CLOSE,
    "Fechamento": CLOSE,
    "Último": CLOSE,

    # Date
    "date": DATE,
    "Data": DATE,
    "data": DATE,
    "Date\n": DATE,
}

# first match wins when no column is given
DEFAULT_PRICE_COLUMNS = (ADJ_CLOSE, CLOSE)


def apply_column_remap(df):
    """Rename columns in *df* using COLUMN_REMAP.

    Returns the updated dataframe and a list of (old, new) tuples for
    the applied mappings.
    """
    original_cols = [str(c) for c in df.columns]
    df = df.set_axis(original_cols, axis=1)
    existing = set(original_cols)
    target_cols = set()
    safe_rename = {}

    for old, new in COLUMN_REMAP.items():
        if old in existing and new not in existing and new not in target_cols:
            safe_rename[old] = new
            target_cols.add(new)

    if safe_rename:
        df = df.rename(columns=safe_rename)

    if len(df.columns) != len(set(df.columns)):
        df = df.loc[:, ~df.columns.duplicated()]

    return df, list(safe_rename.items())


def default_price_column(df):
    """Adjusted close if present, then close, then the first non-date column."""
    for name in DEFAULT_PRICE_COLUMNS:
        if name in df.columns:
            return name
    return next((c for c in df.columns if c != DATE), df.columns[0])
