"""FRED-MD panel ingestion: parse, transform, and align into a SeriesSample.

The expected file layout is the FRED-MD convention: a header row of series
mnemonics with the date column first, a second row labelled ``Transform:``
carrying the per-series transform code (1..7), then one row per month with
blank cells marking missing values.

Transform codes: 1 level, 2 first difference, 3 second difference, 4 log,
5 log first difference, 6 log second difference, 7 first difference of the
period-on-period growth rate.

Outlier screening is deliberately not reimplemented here; the pipeline is
meant to be fed an already-processed vintage (pass ``transform=False`` when
the file holds transformed values).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from datetime import date, datetime
from typing import Optional, Sequence, TextIO, Union

import numpy as np

from .exceptions import DataError, FormatError
from .forecast import SeriesSample

_DATE_FORMATS = ("%m/%d/%Y", "%Y-%m-%d", "%Y-%m", "%m/%Y")
_MISSING_TOKENS = {"", "na", "nan", ".", "null"}


@dataclass(frozen=True)
class RawPanel:
    """A parsed FRED-MD file: month stamps, per-series values, transform codes."""

    dates: tuple[date, ...]
    series: dict[str, np.ndarray]
    tcodes: dict[str, int]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.series)

    def to_csv_text(self) -> str:
        """Re-serialize in the FRED-MD layout; numeric content round-trips
        exactly (floats written with repr), missing cells stay blank."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        names = list(self.series)
        writer.writerow(["sasdate"] + names)
        writer.writerow(["Transform:"] + [str(self.tcodes[s]) for s in names])
        for i, stamp in enumerate(self.dates):
            row = [f"{stamp.month}/{stamp.day}/{stamp.year}"]
            for s in names:
                v = self.series[s][i]
                row.append("" if math.isnan(v) else repr(float(v)))
            writer.writerow(row)
        return buf.getvalue()


def _parse_month(cell: str, row_no: int) -> date:
    cell = cell.strip()
    for fmt in _DATE_FORMATS:
        try:
            return datetime.strptime(cell, fmt).date()
        except ValueError:
            continue
    raise FormatError(f"row {row_no}: unparseable date {cell!r}")


def _parse_cell(cell: str, row_no: int, col_name: str) -> float:
    token = cell.strip()
    if token.lower() in _MISSING_TOKENS:
        return math.nan
    try:
        return float(token)
    except ValueError:
        raise FormatError(
            f"row {row_no}, column {col_name!r}: unparseable value {cell!r}"
        ) from None


def parse_fredmd(source: Union[str, bytes, TextIO]) -> RawPanel:
    """Parse FRED-MD CSV content (a string, bytes, or open text file)."""
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = [row for row in csv.reader(source)]
    rows = [row for row in rows if any(cell.strip() for cell in row)]
    if len(rows) < 3:
        raise FormatError("file too short: need header, transform row, and data")
    header = rows[0]
    names = [cell.strip() for cell in header[1:]]
    if not names or any(not s for s in names):
        raise FormatError("header row has empty series names")
    if len(set(names)) != len(names):
        raise FormatError("duplicate series names in header")
    width = len(header)

    transform_row = rows[1]
    if not transform_row or not transform_row[0].strip().lower().startswith("transform"):
        raise FormatError('row 2: expected the "Transform:" row')
    if len(transform_row) != width:
        raise FormatError(f"row 2: {len(transform_row)} cells, expected {width}")
    tcodes: dict[str, int] = {}
    for name, cell in zip(names, transform_row[1:]):
        try:
            code = int(float(cell))
        except ValueError:
            raise FormatError(
                f"row 2, column {name!r}: bad transform code {cell!r}"
            ) from None
        if not 1 <= code <= 7:
            raise FormatError(f"row 2, column {name!r}: transform code {code} outside 1..7")
        tcodes[name] = code

    dates: list[date] = []
    data: list[list[float]] = []
    for offset, row in enumerate(rows[2:], start=3):
        if len(row) != width:
            raise FormatError(f"row {offset}: {len(row)} cells, expected {width}")
        dates.append(_parse_month(row[0], offset))
        data.append(
            [_parse_cell(cell, offset, name) for name, cell in zip(names, row[1:])]
        )
    values = np.asarray(data, dtype=np.float64)
    series = {name: np.ascontiguousarray(values[:, j]) for j, name in enumerate(names)}
    return RawPanel(dates=tuple(dates), series=series, tcodes=tcodes)


def read_fredmd(path) -> RawPanel:
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        return parse_fredmd(fh)


def apply_tcode(series, code: int, name: str = "series") -> np.ndarray:
    """Apply one FRED-MD transform code; leading cells consumed by
    differencing come back as NaN."""
    x = np.asarray(series, dtype=np.float64)
    if code not in range(1, 8):
        raise DataError(f"{name}: transform code {code} outside 1..7")
    if code in (4, 5, 6):
        observed = ~np.isnan(x)
        if np.any(x[observed] <= 0.0):
            raise DataError(f"{name}: nonpositive value under a log transform")
    out = np.full_like(x, np.nan)
    if code == 1:
        out = x.copy()
    elif code == 2:
        out[1:] = x[1:] - x[:-1]
    elif code == 3:
        out[2:] = x[2:] - 2.0 * x[1:-1] + x[:-2]
    elif code == 4:
        out = np.log(x)
    elif code == 5:
        lx = np.log(x)
        out[1:] = lx[1:] - lx[:-1]
    elif code == 6:
        lx = np.log(x)
        out[2:] = lx[2:] - 2.0 * lx[1:-1] + lx[:-2]
    elif code == 7:
        prev = x[:-1]
        both = ~np.isnan(x[1:]) & ~np.isnan(prev)
        if np.any(prev[both] == 0.0):
            raise DataError(f"{name}: zero denominator under transform code 7")
        ratio = np.full(x.shape[0] - 1, np.nan)
        ratio[both] = x[1:][both] / prev[both] - 1.0
        out[2:] = ratio[1:] - ratio[:-1]
    return out


@dataclass(frozen=True)
class DatasetReport:
    """What build_dataset kept and why rows were dropped."""

    target: str
    predictors: tuple[str, ...]
    months: tuple[date, ...]
    dropped: tuple[tuple[date, str], ...]
    n: int

    def summary(self) -> str:
        span = (
            f"{self.months[0].isoformat()}..{self.months[-1].isoformat()}"
            if self.months
            else "empty"
        )
        return (
            f"n={self.n} rows ({span}), {len(self.dropped)} months dropped, "
            f"target={self.target}, p={len(self.predictors)}"
        )


def build_dataset(
    panel: RawPanel,
    target: str,
    predictors: Sequence[str],
    transform: bool = True,
) -> tuple[SeriesSample, DatasetReport]:
    """Assemble the aligned sample: predictors at month t forecast the
    target at month t+1.

    Row t of the output holds the month-t values; the forecast engine
    applies the one-month lag internally. A month enters when its own
    target and predictor values and the next month's target are all
    observed; everything else is dropped and reported. Complete-case only,
    no interpolation.
    """
    predictors = tuple(predictors)
    if target not in panel.series:
        raise DataError(f"target series {target!r} not in panel")
    for name in predictors:
        if name not in panel.series:
            raise DataError(f"predictor series {name!r} not in panel")
    if not predictors:
        raise DataError("need at least one predictor")

    def prepared(name: str) -> np.ndarray:
        if transform:
            return apply_tcode(panel.series[name], panel.tcodes[name], name=name)
        return panel.series[name]

    y_full = prepared(target)
    x_full = np.column_stack([prepared(name) for name in predictors])
    t_total = len(panel.dates)
    y_ok = ~np.isnan(y_full)
    x_ok = ~np.isnan(x_full)

    keep: list[int] = []
    dropped: list[tuple[date, str]] = []
    for t in range(t_total - 1):
        if not y_ok[t]:
            dropped.append((panel.dates[t], f"target {target} missing"))
            continue
        if not y_ok[t + 1]:
            dropped.append((panel.dates[t], f"next-month target {target} missing"))
            continue
        if not x_ok[t].all():
            bad = predictors[int(np.argmin(x_ok[t]))]
            dropped.append((panel.dates[t], f"predictor {bad} missing"))
            continue
        keep.append(t)
    if len(keep) < 8:
        raise DataError(
            f"only {len(keep)} complete rows after alignment; need at least 8"
        )
    rows = np.asarray(keep, dtype=np.intp)
    sample = SeriesSample(y=y_full[rows], X=x_full[rows], names=predictors)
    report = DatasetReport(
        target=target,
        predictors=predictors,
        months=tuple(panel.dates[t] for t in keep),
        dropped=tuple(dropped),
        n=len(keep),
    )
    return sample, report


def dump_dataset_csv(sample: SeriesSample, report: DatasetReport) -> str:
    """Canonical audit dump: date, y, x_1..x_p with full-precision floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["date", "y"] + list(sample.names))
    for i, stamp in enumerate(report.months):
        writer.writerow(
            [stamp.isoformat(), repr(float(sample.y[i]))]
            + [repr(float(v)) for v in sample.X[i]]
        )
    return buf.getvalue()
