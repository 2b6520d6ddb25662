"""Delimiter-separated parsers for the EEG and gaze modality files.

Both formats are header-first tables. The delimiter is auto-detected
between comma and tab on the header row, matching the variation seen in
eye-tracker exports. Numeric failures report the offending row and column.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from ..errors import EmptyRecord, ParseError
from .records import EegRecord, GazeRecord, UNIT_MS, normalize_event

#: Channel columns are whatever headers carry this prefix, in file order.
CHANNEL_PREFIX = "RAW_"


def _decode(data: bytes, what: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{what}: not valid UTF-8 text ({exc})") from exc


def _sniff_delimiter(header_line: str) -> str:
    return "\t" if "\t" in header_line else ","


def _rows(text: str, what: str) -> tuple[list[str], list[list[str]]]:
    stripped = text.strip("\r\n ")
    if not stripped:
        raise ParseError(f"{what}: no header row")
    delimiter = _sniff_delimiter(stripped.splitlines()[0])
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    header = [cell.strip() for cell in rows[0]]
    return header, rows[1:]


def _find_column(header: list[str], name: str) -> int | None:
    lowered = [h.lower() for h in header]
    try:
        return lowered.index(name.lower())
    except ValueError:
        return None


def _cell_float(row: list[str], row_no: int, col: int, col_name: str, what: str) -> float:
    if col >= len(row):
        raise ParseError(
            f"{what}: row {row_no} has {len(row)} cells, column {col_name!r} missing"
        )
    cell = row[col].strip()
    try:
        return float(cell)
    except ValueError:
        raise ParseError(
            f"{what}: non-numeric value {cell!r} at row {row_no}, column {col_name!r}"
        ) from None


def load_eeg(data: bytes, native_unit: str = UNIT_MS) -> EegRecord:
    """Parse an EEG table into a typed record.

    Every column whose header starts with ``RAW_`` becomes a channel, in
    file order; any channel list is accepted. Other columns are ignored.

    Raises:
        ParseError: missing timestamp column, non-numeric cell, ragged row.
        EmptyRecord: header only, zero data rows.
    """
    header, rows = _rows(_decode(data, "EEG"), "EEG")
    ts_col = _find_column(header, "TimeStamp")
    if ts_col is None:
        raise ParseError(f"EEG: no timestamp column in header {header}")
    channel_cols = [(i, h) for i, h in enumerate(header) if h.startswith(CHANNEL_PREFIX)]
    if not channel_cols:
        raise ParseError(f"EEG: no {CHANNEL_PREFIX}* channel columns in header {header}")
    if not rows:
        raise EmptyRecord("EEG: zero data rows")

    width = len(header)
    timestamps = np.empty(len(rows))
    channels = {name: np.empty(len(rows)) for _, name in channel_cols}
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(
                f"EEG: ragged row {r + 1} ({len(row)} cells, header has {width})"
            )
        timestamps[r] = _cell_float(row, r + 1, ts_col, header[ts_col], "EEG")
        for col, name in channel_cols:
            channels[name][r] = _cell_float(row, r + 1, col, name, "EEG")

    return EegRecord(
        timestamps=timestamps,
        channels=[(name, channels[name]) for _, name in channel_cols],
        native_unit=native_unit,
    )


def load_gaze(data: bytes, native_unit: str = UNIT_MS) -> GazeRecord:
    """Parse a gaze table (TimeStamp, X, Y, optional Event) into a record.

    Event strings are normalized case-insensitively to fixation/saccade/
    blink; unknown labels are kept verbatim; empty cells mean no event.
    """
    header, rows = _rows(_decode(data, "gaze"), "gaze")
    cols = {}
    for name in ("TimeStamp", "X", "Y"):
        idx = _find_column(header, name)
        if idx is None:
            raise ParseError(f"gaze: required column {name!r} missing from {header}")
        cols[name] = idx
    event_col = _find_column(header, "Event")
    if not rows:
        raise EmptyRecord("gaze: zero data rows")

    n = len(rows)
    timestamps, xs, ys = np.empty(n), np.empty(n), np.empty(n)
    events: list[str | None] = []
    for r, row in enumerate(rows):
        timestamps[r] = _cell_float(row, r + 1, cols["TimeStamp"], "TimeStamp", "gaze")
        xs[r] = _cell_float(row, r + 1, cols["X"], "X", "gaze")
        ys[r] = _cell_float(row, r + 1, cols["Y"], "Y", "gaze")
        if event_col is None or event_col >= len(row):
            events.append(None)
        else:
            events.append(normalize_event(row[event_col]))

    return GazeRecord(
        timestamps=timestamps, x=xs, y=ys, events=events, native_unit=native_unit
    )
