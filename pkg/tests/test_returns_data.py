import io
import math

import numpy as np
import pandas as pd
import pytest

from stablefit.column_mapping import ADJ_CLOSE, apply_column_remap, default_price_column
from stablefit.errors import (
    EmptyInputError,
    InsufficientDataError,
    InvalidParameterError,
    MissingColumnError,
    MissingFileError,
    NonPositivePriceError,
    ParseFailureError,
)
from stablefit.returns_data import (
    ReturnsSeries,
    load_csv,
    load_matrix,
    load_returns_series,
    read_price_frame,
    returns_series,
    to_log_returns,
    to_returns,
    to_simple_returns,
)

PRICES_CSV = """Date,Open,Close,Adj Close
2024-01-02,100.0,101.0,100.5
2024-01-03,101.0,102.5,102.0
2024-01-04,102.5, 99.0,98.5
"""


@pytest.fixture
def prices_file(tmp_path):
    path = tmp_path / "prices.csv"
    path.write_text(PRICES_CSV)
    return path


class TestColumnMapping:
    def test_aliases_renamed(self):
        df, changes = apply_column_remap(pd.DataFrame(columns=["Data", "Fechamento Ajustado"]))
        assert list(df.columns) == ["Date", ADJ_CLOSE]
        assert ("Fechamento Ajustado", ADJ_CLOSE) in changes

    def test_existing_target_kept(self):
        df, changes = apply_column_remap(pd.DataFrame(columns=["Close", "close"]))
        assert list(df.columns) == ["Close", "close"]
        assert changes == []

    def test_default_column_order(self):
        assert default_price_column(pd.DataFrame(columns=["Date", "Close", ADJ_CLOSE])) == ADJ_CLOSE
        assert default_price_column(pd.DataFrame(columns=["Date", "Close"])) == "Close"
        assert default_price_column(pd.DataFrame(columns=["Date", "Price"])) == "Price"


class TestLoadCsv:
    def test_default_is_adjusted_close(self, prices_file):
        np.testing.assert_allclose(load_csv(prices_file), [100.5, 102.0, 98.5])

    def test_column_by_name_alias_and_index(self, prices_file):
        np.testing.assert_allclose(load_csv(prices_file, "Close"), [101.0, 102.5, 99.0])
        np.testing.assert_allclose(load_csv(prices_file, "Adj Close"), [100.5, 102.0, 98.5])
        np.testing.assert_allclose(load_csv(prices_file, "1"), [100.0, 101.0, 102.5])

    def test_missing_column(self, prices_file):
        with pytest.raises(MissingColumnError):
            load_csv(prices_file, "Volume")
        with pytest.raises(MissingColumnError):
            load_csv(prices_file, 9)

    def test_parse_failure_reports_file_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("Close\n10\n11\nabc\n")
        with pytest.raises(ParseFailureError) as err:
            load_csv(path)
        assert err.value.row == 4
        assert err.value.column == "Close"

    def test_headerless_file(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("1.5\n2.5\nx\n")
        with pytest.raises(ParseFailureError) as err:
            load_csv(path, has_header=False)
        assert err.value.row == 3
        path.write_text("1.5\n2.5\n")
        np.testing.assert_allclose(load_csv(path, has_header=False), [1.5, 2.5])

    def test_missing_and_empty_files(self, tmp_path):
        with pytest.raises(MissingFileError):
            load_csv(tmp_path / "nope.csv")
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(EmptyInputError):
            load_csv(empty)
        header_only = tmp_path / "header.csv"
        header_only.write_text("Date,Close\n")
        with pytest.raises(EmptyInputError):
            load_csv(header_only)

    def test_file_object_source(self):
        df = read_price_frame(io.BytesIO(PRICES_CSV.encode("utf-8")), filename="upload.csv")
        assert ADJ_CLOSE in df.columns

    def test_excel_source(self, tmp_path):
        pytest.importorskip("openpyxl")
        path = tmp_path / "prices.xlsx"
        pd.DataFrame({"Data": ["2024-01-02", "2024-01-03"], "Fechamento": [10.0, 12.0]}).to_excel(
            path, index=False
        )
        np.testing.assert_allclose(load_csv(path), [10.0, 12.0])


class TestLoadMatrix:
    def test_all_non_date_columns(self, prices_file):
        matrix = load_matrix(prices_file)
        assert matrix.shape == (3, 3)
        np.testing.assert_allclose(matrix[:, 0], [100.0, 101.0, 102.5])

    def test_selected_columns(self, prices_file):
        matrix = load_matrix(prices_file, ["Adj Close", "Open"])
        np.testing.assert_allclose(matrix[0], [100.5, 100.0])


class TestReturns:
    def test_log_returns(self):
        np.testing.assert_allclose(to_log_returns([1.0, math.e, math.e**3]), [1.0, 2.0])

    def test_simple_returns(self):
        np.testing.assert_allclose(to_simple_returns([1.0, 2.0, 3.0]), [1.0, 0.5])

    def test_matrix_is_column_wise(self):
        prices = np.array([[1.0, 2.0], [2.0, 2.0], [4.0, 1.0]])
        np.testing.assert_allclose(to_log_returns(prices), np.log([[2.0, 1.0], [2.0, 0.5]]))

    def test_none_passes_through(self):
        np.testing.assert_array_equal(to_returns([-1.0, 2.0], "none"), [-1.0, 2.0])

    def test_errors(self):
        with pytest.raises(NonPositivePriceError):
            to_log_returns([1.0, 0.0, 2.0])
        with pytest.raises(InsufficientDataError):
            to_log_returns([1.0])
        with pytest.raises(InvalidParameterError):
            to_returns([1.0, 2.0], "excess")


class TestReturnsSeries:
    def test_minimum_length(self):
        with pytest.raises(InsufficientDataError):
            ReturnsSeries(np.zeros(20), "x.csv", "Close")
        assert ReturnsSeries(np.zeros(21), "x.csv", "Close").n == 21

    def test_load_from_prices(self, tmp_path):
        prices = 100.0 * np.exp(np.cumsum(np.random.default_rng(0).normal(0.0, 0.01, 30)))
        path = tmp_path / "series.csv"
        pd.DataFrame({"Date": range(30), "Adj Close": prices}).to_csv(path, index=False)
        series = load_returns_series(path)
        assert series.n == 29
        assert series.column == ADJ_CLOSE
        np.testing.assert_allclose(series.values, np.diff(np.log(prices)), rtol=1e-10)

    def test_from_loaded_frame(self, prices_file):
        df = pd.DataFrame({"Close": [str(100.0 + k) for k in range(30)]})
        series = returns_series(df, "Close", kind="none", source="upload.csv")
        assert series.source == "upload.csv"
        assert series.column == "Close"
        assert series.n == 30
        with pytest.raises(InsufficientDataError):
            returns_series(read_price_frame(prices_file), "Close")


class TestMalformedFiles:
    def test_invalid_utf8(self, tmp_path):
        path = tmp_path / "latin.csv"
        path.write_bytes(b"Date,Close\n2024-01-02,10\n2024-01-03,\xff\xfe\n")
        with pytest.raises(ParseFailureError, match="not UTF-8"):
            load_csv(path)

    def test_ragged_rows(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("Date,Close\n1,10\n2,11,12\n3,13\n")
        with pytest.raises(ParseFailureError, match="cannot read"):
            load_csv(path)

    def test_message_without_position(self):
        exc = ParseFailureError("bad table")
        assert str(exc) == "bad table"
        assert exc.row is None
