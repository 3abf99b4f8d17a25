"""CSV reading and writing for series and reports.

Series files carry a header row with a ``value`` column and an optional
``period`` column of consecutive integer labels; UTF-8, decimal points, no
thousands separators.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import DataFormatError
from .series import TimeSeries


def read_series_csv(path) -> TimeSeries:
    """Load a series from CSV; malformed content raises DataFormatError."""
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError(f"{path}: empty file, header row required") from None
        header = [column.strip().lower() for column in header]
        if "value" not in header:
            raise DataFormatError(f"{path}: header must name a 'value' column")
        value_col = header.index("value")
        period_col = header.index("period") if "period" in header else None
        values: list[float] = []
        periods: list[int] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise DataFormatError(
                    f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}"
                )
            try:
                values.append(float(row[value_col]))
            except ValueError as exc:
                raise DataFormatError(
                    f"{path}:{lineno}: value {row[value_col]!r} is not a number"
                ) from exc
            if period_col is not None:
                try:
                    periods.append(int(row[period_col]))
                except ValueError as exc:
                    raise DataFormatError(
                        f"{path}:{lineno}: period {row[period_col]!r} is not an integer"
                    ) from exc
    if not values:
        raise DataFormatError(f"{path}: no data rows")
    start_index = 1
    if periods:
        steps = np.diff(periods)
        if periods and np.any(steps != 1):
            raise DataFormatError(f"{path}: period labels must be consecutive integers")
        start_index = periods[0]
    try:
        return TimeSeries(np.array(values), start_index=start_index)
    except ValueError as exc:
        raise DataFormatError(f"{path}: {exc}") from exc


def write_series_csv(path, series: TimeSeries, value_column: str = "value") -> None:
    """Write (t, value) rows with the series' own period labels."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["t", value_column])
        for offset, value in enumerate(series.values):
            writer.writerow([series.start_index + offset, repr(float(value))])


def write_table_csv(path, header: list[str], rows: list[tuple]) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(list(row))


def write_key_values(path, pairs: dict[str, object]) -> None:
    """Write a flat key=value file (the manifest format)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for key, value in pairs.items():
            handle.write(f"{key}={value}\n")
