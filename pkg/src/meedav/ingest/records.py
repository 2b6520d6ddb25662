"""Typed per-modality records as parsed from trial files.

Records are immutable once constructed and validate their own invariants,
so every consumer downstream can rely on consistent shapes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ParseError
from .keys import TrialKey

#: Canonical gaze event labels; anything else is kept verbatim ("other").
EVENT_FIXATION = "fixation"
EVENT_SACCADE = "saccade"
EVENT_BLINK = "blink"
CANONICAL_EVENTS = (EVENT_FIXATION, EVENT_SACCADE, EVENT_BLINK)

#: Timestamp units a dataset may declare.
UNIT_MS = "ms"
UNIT_S = "s"


def normalize_event(label: str | None) -> str | None:
    """Map a raw event cell to its canonical label.

    Case-insensitive match against fixation/saccade/blink; empty cells map
    to None; unknown strings are preserved as-is.
    """
    if label is None:
        return None
    text = label.strip()
    if not text:
        return None
    lowered = text.lower()
    if lowered in CANONICAL_EVENTS:
        return lowered
    return text


def _check_unit(unit: str) -> str:
    if unit not in (UNIT_MS, UNIT_S):
        raise ParseError(f"timestamp unit must be 'ms' or 's', got {unit!r}")
    return unit


def _check_timestamps(ts: np.ndarray, what: str) -> None:
    if np.any(np.diff(ts) < 0):
        raise ParseError(f"{what}: timestamps must be non-decreasing")


@dataclass(frozen=True)
class EegRecord:
    """Raw EEG stream: native timestamps plus named microvolt channels."""

    timestamps: np.ndarray
    channels: list[tuple[str, np.ndarray]]
    native_unit: str = UNIT_MS

    def __post_init__(self):
        object.__setattr__(self, "timestamps", np.asarray(self.timestamps, float))
        if not self.channels:
            raise ParseError("EEG record needs at least one channel")
        names = [name for name, _ in self.channels]
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate EEG channel names: {names}")
        coerced = []
        for name, samples in self.channels:
            samples = np.asarray(samples, float)
            if samples.shape != self.timestamps.shape:
                raise ParseError(
                    f"channel {name}: {samples.size} samples for "
                    f"{self.timestamps.size} timestamps"
                )
            coerced.append((name, samples))
        object.__setattr__(self, "channels", coerced)
        _check_timestamps(self.timestamps, "EEG")
        _check_unit(self.native_unit)

    @property
    def channel_names(self) -> list[str]:
        return [name for name, _ in self.channels]

    def matrix(self) -> np.ndarray:
        """Channels stacked as a C x T array."""
        return np.vstack([samples for _, samples in self.channels])


@dataclass(frozen=True)
class GazeRecord:
    """Eye-tracker samples: timestamps, screen coordinates, event labels."""

    timestamps: np.ndarray
    x: np.ndarray
    y: np.ndarray
    events: list[str | None] = field(default_factory=list)
    native_unit: str = UNIT_MS

    def __post_init__(self):
        object.__setattr__(self, "timestamps", np.asarray(self.timestamps, float))
        object.__setattr__(self, "x", np.asarray(self.x, float))
        object.__setattr__(self, "y", np.asarray(self.y, float))
        n = self.timestamps.size
        if self.x.size != n or self.y.size != n or len(self.events) != n:
            raise ParseError(
                f"gaze columns disagree: {n} timestamps, {self.x.size} x, "
                f"{self.y.size} y, {len(self.events)} events"
            )
        _check_timestamps(self.timestamps, "gaze")
        _check_unit(self.native_unit)


@dataclass(frozen=True)
class AudioRecord:
    """Mono audio amplitudes in [-1, 1] at a fixed sample rate."""

    sample_rate: float
    samples: np.ndarray

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ParseError(f"sample rate must be positive, got {self.sample_rate}")
        object.__setattr__(self, "samples", np.asarray(self.samples, float))
        if self.samples.size and not np.all(np.isfinite(self.samples)):
            raise ParseError("audio samples must be finite")

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


@dataclass(frozen=True)
class TrialRecordSet:
    """File grouping of one trial: EEG is required, gaze/audio optional."""

    key: TrialKey
    eeg_path: str
    gaze_path: str | None = None
    audio_path: str | None = None

    @property
    def modalities(self) -> list[str]:
        present = ["eeg"]
        if self.gaze_path is not None:
            present.append("gaze")
        if self.audio_path is not None:
            present.append("audio")
        return present
