"""Long-format CSV panel ingestion and export."""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from crossdep.core.exceptions import DuplicateObservation, ParseError, UnbalancedPanel
from crossdep.core.panel import PanelDataset

logger = logging.getLogger(__name__)

KEY_COLUMNS = ["unit", "time"]
FLOAT_FORMAT = "%.17g"

_TOKENIZER_LINE = re.compile(r"line (\d+)")


def _expected_header(n_regressors: int) -> List[str]:
    return KEY_COLUMNS + ["y"] + [f"x{l}" for l in range(1, n_regressors + 1)]


def _read_frame(path: Union[str, Path]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except FileNotFoundError as exc:
        raise ParseError(f"No such file: {path}") from exc
    except pd.errors.EmptyDataError as exc:
        raise ParseError("File is empty", details={"line": 1}) from exc
    except pd.errors.ParserError as exc:
        match = _TOKENIZER_LINE.search(str(exc))
        line = int(match.group(1)) if match else None
        raise ParseError(f"Malformed CSV row: {exc}", details={"line": line}) from exc

    columns = [c.strip() for c in frame.columns]
    expected = _expected_header(len(columns) - 3)
    if columns != expected:
        raise ParseError(
            f"Header must be {','.join(expected[:3])},x1,...; got {','.join(columns)}",
            details={"line": 1},
        )
    frame.columns = columns
    return frame


def _parse_float(text: str) -> float:
    # float() round-trips 17-digit text exactly; inf and nan count as bad cells
    try:
        value = float(text)
    except ValueError:
        return float("nan")
    return value if np.isfinite(value) else float("nan")


def _sorted_labels(labels: pd.Series) -> List[str]:
    unique = list(pd.unique(labels))
    numeric = pd.to_numeric(pd.Series(unique), errors="coerce")
    if numeric.notna().all():
        return [unique[i] for i in np.argsort(numeric.to_numpy(), kind="stable")]
    return sorted(unique)


def load_panel_csv(path: Union[str, Path], intercept: bool = True) -> PanelDataset:
    """Read a balanced panel from ``unit,time,y,x1,...`` rows.

    Units keep their order of first appearance; periods are sorted (numerically
    when every label is a number). A constant regressor is prepended when
    ``intercept`` is set.

    Raises:
        ParseError: On a malformed header or a non-numeric value (``details["line"]``)
        DuplicateObservation: If a (unit, time) pair appears twice
        UnbalancedPanel: If some unit misses a period present for another unit
    """
    frame = _read_frame(path)
    value_columns = [c for c in frame.columns if c not in KEY_COLUMNS]
    frame["unit"] = frame["unit"].str.strip()
    frame["time"] = frame["time"].str.strip()

    values = frame[value_columns].apply(lambda col: col.str.strip().map(_parse_float))
    bad_rows = np.flatnonzero(values.isna().any(axis=1).to_numpy())
    if bad_rows.size:
        row = int(bad_rows[0])
        column = next(c for c in value_columns if pd.isna(values.iloc[row][c]))
        raise ParseError(
            f"Non-numeric or non-finite value {frame.iloc[row][column]!r} in column {column}",
            details={"line": row + 2},
        )

    duplicated = np.flatnonzero(frame.duplicated(KEY_COLUMNS).to_numpy())
    if duplicated.size:
        row = int(duplicated[0])
        raise DuplicateObservation(
            f"Duplicate observation for unit {frame.iloc[row]['unit']} "
            f"at time {frame.iloc[row]['time']}",
            details={"line": row + 2},
        )

    unit_ids = list(pd.unique(frame["unit"]))
    time_ids = _sorted_labels(frame["time"])
    values.index = pd.MultiIndex.from_frame(frame[KEY_COLUMNS])
    grid = pd.MultiIndex.from_product([unit_ids, time_ids], names=KEY_COLUMNS)
    missing = grid.difference(values.index, sort=False)
    if len(missing):
        unit, time = missing[0]
        raise UnbalancedPanel(
            f"No observation at time {time}",
            details={"unit": unit, "missing_time": time, "missing": len(missing)},
        )
    wide = values.reindex(grid)

    n, t = len(unit_ids), len(time_ids)
    y = wide["y"].to_numpy().reshape(n, t)
    regressors = [c for c in value_columns if c != "y"]
    x = wide[regressors].to_numpy().reshape(n, t, len(regressors))
    if intercept:
        x = np.concatenate([np.ones((n, t, 1)), x], axis=2)

    data = PanelDataset(y=y, x=x, unit_ids=unit_ids, time_ids=time_ids, has_intercept=intercept)
    logger.info(f"Loaded panel from {path}: N={n}, T={t}, p={data.n_regressors}")
    return data


def panel_to_frame(data: PanelDataset) -> pd.DataFrame:
    """Long-format frame of a panel, without the prepended intercept."""
    n, t = data.n_units, data.n_periods
    unit_ids = data.unit_ids or [str(i) for i in range(n)]
    time_ids = data.time_ids or [str(s) for s in range(1, t + 1)]
    x = data.x[:, :, 1:] if data.has_intercept else data.x
    frame = pd.DataFrame(
        {
            "unit": np.repeat(unit_ids, t),
            "time": np.tile(time_ids, n),
            "y": data.y.reshape(-1),
        }
    )
    for l in range(x.shape[2]):
        frame[f"x{l + 1}"] = x[:, :, l].reshape(-1)
    return frame


def write_panel_csv(data: PanelDataset, path: Union[str, Path]) -> None:
    """Write ``data`` in the format :func:`load_panel_csv` reads, at 17 significant digits."""
    panel_to_frame(data).to_csv(path, index=False, float_format=FLOAT_FORMAT)
