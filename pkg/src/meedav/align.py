"""Time alignment: relative seconds, the shared 256 Hz grid, and the
unified per-trial record every downstream feature consumes.

All operations are pure; an AlignedTrial is immutable once built, so
later stages never touch the original files again.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

import numpy as np

from .errors import (
    BadParameter,
    DisjointSpansWarning,
    InsufficientData,
    NonMonotonicTimestamps,
)
from .validation import as_float_vector, check_not_empty, check_same_length

if TYPE_CHECKING:
    from .ingest.keys import TrialKey
    from .ingest.records import AudioRecord, EegRecord, GazeRecord

#: The shared grid all modalities are resampled onto.
GRID_RATE_HZ = 256.0
#: Screen extent gaze coordinates are clamped to.
SCREEN_WIDTH_PX = 1280.0
SCREEN_HEIGHT_PX = 1024.0
#: Below this share of the EEG span a modality is dropped as disjoint.
MIN_OVERLAP_FRACTION = 0.1

_UNIT_SCALE = {"ms": 1e-3, "s": 1.0}


def _unit_scale(unit: str) -> float:
    try:
        return _UNIT_SCALE[unit]
    except KeyError:
        raise BadParameter(f"unknown timestamp unit {unit!r}") from None


def to_relative_seconds(timestamps, unit: str, origin: float | None = None) -> np.ndarray:
    """Convert native-unit instants to seconds relative to an origin.

    The origin defaults to the first timestamp, so output[0] == 0 and
    differences are preserved up to the unit conversion. ``origin`` is
    given in the same native unit as ``timestamps``.

    Raises:
        EmptyInput: no timestamps.
        NonMonotonicTimestamps: a strictly decreasing step was found.
    """
    ts = check_not_empty(as_float_vector(timestamps, "timestamps"), "timestamps")
    if np.any(np.diff(ts) < 0):
        raise NonMonotonicTimestamps("timestamps must be non-decreasing")
    if origin is None:
        origin = ts[0]
    return (ts - origin) * _unit_scale(unit)


def resample_linear(times, values, grid) -> np.ndarray:
    """Evaluate a sampled signal on a new time axis by linear interpolation.

    Duplicate time points are collapsed to their mean value first (the
    order-independent choice). Grid points outside the sampled span take
    the boundary value. Exact at grid points that coincide with sample
    times, which makes resampling idempotent.

    Raises:
        InsufficientData: fewer than 2 distinct time points.
    """
    t = as_float_vector(times, "times")
    v = as_float_vector(values, "values")
    check_same_length(t, v, "times", "values")
    g = as_float_vector(grid, "grid")

    if t.size and np.any(np.diff(t) <= 0):
        t, inverse = np.unique(t, return_inverse=True)
        counts = np.bincount(inverse)
        v = np.bincount(inverse, weights=v) / counts
    if t.size < 2:
        raise InsufficientData(
            f"need at least 2 distinct time points, got {t.size}"
        )
    return np.interp(g, t, v)


def normalize_audio(samples) -> np.ndarray:
    """Scale samples by their peak magnitude into [-1, 1].

    All-zero input comes back unchanged; otherwise the maximum absolute
    output value is exactly 1.
    """
    s = check_not_empty(as_float_vector(samples, "samples"), "samples")
    peak = np.max(np.abs(s))
    if peak == 0.0:
        return s.copy()
    return s / peak


def map_gaze_to_screen(x, y):
    """Clamp gaze coordinates to the screen extent (1280 x 1024 px)."""
    return (
        np.clip(x, 0.0, SCREEN_WIDTH_PX),
        np.clip(y, 0.0, SCREEN_HEIGHT_PX),
    )


@dataclass(frozen=True)
class AlignedTrial:
    """All modalities of one trial on the shared 256 Hz grid.

    ``gaze_events`` are interval-free (time, label) markers at their
    onset; they are deliberately not resampled. ``validity`` is filled in
    by the analytics stage via :meth:`with_validity`.
    """

    grid: np.ndarray
    eeg: np.ndarray
    channel_names: list[str]
    key: "TrialKey | None" = None
    gaze_x: np.ndarray | None = None
    gaze_y: np.ndarray | None = None
    gaze_events: list[tuple[float, str]] = field(default_factory=list)
    audio: np.ndarray | None = None
    validity: dict[str, bool] | None = None

    @property
    def n_samples(self) -> int:
        return self.grid.size

    @property
    def duration_s(self) -> float:
        return float(self.grid[-1])

    @property
    def has_gaze(self) -> bool:
        return self.gaze_x is not None

    @property
    def has_audio(self) -> bool:
        return self.audio is not None

    def with_validity(self, flags: dict[str, bool]) -> "AlignedTrial":
        return replace(self, validity=dict(flags))


def _grid_for(duration_s: float) -> np.ndarray:
    # includes both endpoints of the EEG span; epsilon guards fp rounding
    n = int(np.floor(duration_s * GRID_RATE_HZ + 1e-9)) + 1
    return np.arange(n) / GRID_RATE_HZ


def _overlap_fraction(span_start: float, span_end: float, duration: float) -> float:
    if duration <= 0:
        return 0.0
    overlap = min(span_end, duration) - max(span_start, 0.0)
    return max(overlap, 0.0) / duration


def _event_onsets(times: np.ndarray, labels) -> list[tuple[float, str]]:
    onsets = []
    previous = None
    for t, label in zip(times, labels):
        if label is not None and label != previous:
            onsets.append((float(t), label))
        previous = label
    return onsets


def align_trial(
    eeg: "EegRecord",
    gaze: "GazeRecord | None" = None,
    audio: "AudioRecord | None" = None,
    key: "TrialKey | None" = None,
) -> AlignedTrial:
    """Resample one trial's modalities onto the shared grid.

    The grid spans [0, EEG duration] at 256 Hz. Gaze coordinates are
    clamped to the screen after resampling; audio is peak-normalized
    before resampling; gaze events stay as onset markers. A modality
    overlapping less than 10% of the EEG span is dropped with a
    DisjointSpansWarning rather than aborting the trial.

    Raises:
        InsufficientData: EEG has fewer than 2 distinct timestamps.
    """
    eeg_scale = _unit_scale(eeg.native_unit)
    eeg_rel = to_relative_seconds(eeg.timestamps, eeg.native_unit)
    duration = float(eeg_rel[-1])
    if duration <= 0:
        raise InsufficientData("EEG span has zero duration")
    grid = _grid_for(duration)
    eeg_matrix = np.vstack(
        [resample_linear(eeg_rel, samples, grid) for _, samples in eeg.channels]
    )

    gaze_x = gaze_y = None
    gaze_events: list[tuple[float, str]] = []
    if gaze is not None:
        gaze_scale = _unit_scale(gaze.native_unit)
        origin = eeg.timestamps[0] * eeg_scale / gaze_scale
        gaze_rel = to_relative_seconds(gaze.timestamps, gaze.native_unit, origin=origin)
        if _overlap_fraction(gaze_rel[0], gaze_rel[-1], duration) < MIN_OVERLAP_FRACTION:
            warnings.warn(
                f"gaze overlaps <{MIN_OVERLAP_FRACTION:.0%} of the EEG span; dropped",
                DisjointSpansWarning,
                stacklevel=2,
            )
        else:
            gaze_x, gaze_y = map_gaze_to_screen(
                resample_linear(gaze_rel, gaze.x, grid),
                resample_linear(gaze_rel, gaze.y, grid),
            )
            gaze_events = [
                (t, label)
                for t, label in _event_onsets(gaze_rel, gaze.events)
                if 0.0 <= t <= duration
            ]

    audio_grid = None
    if audio is not None:
        n = audio.samples.size
        audio_duration = n / audio.sample_rate
        if n < 2 or _overlap_fraction(0.0, audio_duration, duration) < MIN_OVERLAP_FRACTION:
            warnings.warn(
                f"audio overlaps <{MIN_OVERLAP_FRACTION:.0%} of the EEG span; dropped",
                DisjointSpansWarning,
                stacklevel=2,
            )
        else:
            audio_times = np.arange(n) / audio.sample_rate
            audio_grid = resample_linear(audio_times, normalize_audio(audio.samples), grid)

    return AlignedTrial(
        grid=grid,
        eeg=eeg_matrix,
        channel_names=eeg.channel_names,
        key=key,
        gaze_x=gaze_x,
        gaze_y=gaze_y,
        gaze_events=gaze_events,
        audio=audio_grid,
    )
