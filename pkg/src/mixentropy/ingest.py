"""Loading, validation and alignment of delimited price series.

The whole engine is index-based: rows are taken in file order and treated as
uniformly sampled. A timestamp column, when declared, is carried along as
opaque strings and never enters any computation. Gaps in the raw feed are
not interpolated; a missing row simply does not exist at this layer.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import EmptySet, FileUnreadable, NonPositivePrice, ParseFailure, TooShort


@dataclass(frozen=True)
class PriceSeries:
    """Uniformly sampled, strictly positive price observations."""

    label: str
    values: np.ndarray
    sample_interval: float = 1.0  # minutes per step
    start_index: int = 0
    timestamps: tuple | None = None  # opaque metadata, never used numerically

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size < 2:
            raise TooShort(f"{self.label!r}: need at least 2 prices, got {values.size}")
        bad = ~np.isfinite(values) | (values <= 0.0)
        if bad.any():
            row = int(np.argmax(bad))
            raise NonPositivePrice(row, float(values[row]) if math.isfinite(values[row]) else values[row])
        if self.sample_interval <= 0:
            raise ValueError("sample_interval must be > 0")
        if self.timestamps is not None and len(self.timestamps) != values.size:
            raise ValueError("timestamps must match values in length")

    def __len__(self):
        return self.values.size


def _parse_price(cell, row_number):
    try:
        value = float(cell)
    except (TypeError, ValueError):
        raise ParseFailure(row_number, f"row {row_number}: {cell!r} is not a number") from None
    if not math.isfinite(value) or value <= 0.0:
        raise NonPositivePrice(row_number, value)
    return value


def load_series(path, label=None, price_column=0, delimiter=",",
                timestamp_column=None, sample_interval=1.0):
    """Read one delimited file into a :class:`PriceSeries`.

    ``price_column`` selects the price field by integer position or, when the
    file has a header row, by name. A header is detected automatically: if
    the first row's price cell does not parse as a number, that row is
    treated as a header. Non-finite or non-positive prices abort the load;
    blank lines are skipped. Row numbers in errors are 1-based file lines.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(f"{path}: {exc}") from exc

    rows = [(i + 1, row) for i, row in enumerate(csv.reader(io.StringIO(text), delimiter=delimiter))
            if row and any(cell.strip() for cell in row)]
    if not rows:
        raise TooShort(f"{path}: file holds no data rows")

    header = None
    first_line, first_row = rows[0]
    if isinstance(price_column, str):
        header = [cell.strip() for cell in first_row]
        if price_column not in header:
            raise ParseFailure(first_line, f"no column named {price_column!r} in header {header}")
        col = header.index(price_column)
        rows = rows[1:]
    else:
        col = int(price_column)
        try:
            float(first_row[col])
        except (IndexError, ValueError):
            # first row is a header (or malformed); skip it and let the data
            # rows decide whether the file is parseable
            header = [cell.strip() for cell in first_row]
            rows = rows[1:]

    ts_col = None
    if timestamp_column is not None:
        if isinstance(timestamp_column, str):
            if header is None or timestamp_column not in header:
                raise ParseFailure(first_line, f"no column named {timestamp_column!r}")
            ts_col = header.index(timestamp_column)
        else:
            ts_col = int(timestamp_column)

    values = []
    stamps = [] if ts_col is not None else None
    for line_number, row in rows:
        if col >= len(row):
            raise ParseFailure(line_number, f"row {line_number}: missing column {col}")
        values.append(_parse_price(row[col], line_number))
        if stamps is not None:
            stamps.append(row[ts_col] if ts_col < len(row) else "")

    if len(values) < 2:
        raise TooShort(f"{path}: need at least 2 data rows, got {len(values)}")

    return PriceSeries(
        label=label if label is not None else path.stem,
        values=np.asarray(values, dtype=float),
        sample_interval=sample_interval,
        timestamps=tuple(stamps) if stamps is not None else None,
    )


def write_series(series, path, delimiter=",", header=True):
    """Write a series (or bare value array) in the format ``load_series`` reads.

    Values are written with ``repr`` so a load/write/load cycle reproduces
    them bit for bit.
    """
    values = series.values if hasattr(series, "values") else np.asarray(series, dtype=float)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["price"] if header else []
    lines.extend(repr(float(v)) for v in values)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def truncate_to_common_length(series_set):
    """Cut every series to the length of the shortest one, dropping tails.

    Keeping a common start index makes the series directly comparable; labels
    and metadata are preserved.
    """
    series_set = list(series_set)
    if not series_set:
        raise EmptySet("no series given")
    min_len = min(len(s) for s in series_set)
    out = []
    for s in series_set:
        if len(s) == min_len:
            out.append(s)
        else:
            out.append(replace(
                s,
                values=s.values[:min_len],
                timestamps=s.timestamps[:min_len] if s.timestamps is not None else None,
            ))
    return out
