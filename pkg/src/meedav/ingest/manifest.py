"""Dataset and segmentation manifests.

A dataset may carry a ``meedav.manifest`` file at its root (line-oriented
``key=value``) remapping timestamp units, modality suffixes, and layout:

    timestamp_unit=ms
    eeg_suffix=.eeg
    gaze_suffix=.et
    audio_suffix=.wav
    layout=preprocessed/{modality}/*

Audio segmentation boundaries come from a separate delimiter-separated
table with columns ``basename,start_s,end_s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fnmatch import fnmatch

from ..errors import ParseError
from .keys import TrialKey, parse_trial_basename
from .records import UNIT_MS, UNIT_S

MANIFEST_FILENAME = "meedav.manifest"

_MODALITIES = ("eeg", "gaze", "audio")


@dataclass(frozen=True)
class DatasetManifest:
    """Per-dataset layout description; defaults match the reference layout."""

    timestamp_unit: str = UNIT_MS
    eeg_suffix: str = ".eeg"
    gaze_suffix: str = ".et"
    audio_suffix: str = ".wav"
    layout: str | None = None

    def suffix_for(self, modality: str) -> str:
        return {
            "eeg": self.eeg_suffix,
            "gaze": self.gaze_suffix,
            "audio": self.audio_suffix,
        }[modality]

    def matches_layout(self, path: str, modality: str) -> bool:
        """Whether a path sits where the layout expects this modality."""
        if self.layout is None:
            return True
        return fnmatch(path, self.layout.format(modality=modality))

    def classify(self, path: str) -> tuple[str, str] | None:
        """(modality, basename) for a path, or None if it matches nothing."""
        filename = path.rsplit("/", 1)[-1]
        for modality in _MODALITIES:
            suffix = self.suffix_for(modality)
            if filename.endswith(suffix) and len(filename) > len(suffix):
                if self.matches_layout(path, modality):
                    return modality, filename[: -len(suffix)]
        return None


def parse_dataset_manifest(data: bytes) -> DatasetManifest:
    """Parse manifest bytes; unknown keys are rejected to catch typos."""
    values: dict[str, str] = {}
    for line_no, raw_line in enumerate(data.decode("utf-8").splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"manifest line {line_no}: expected key=value, got {line!r}")
        values[key.strip()] = value.strip()

    known = {"timestamp_unit", "eeg_suffix", "gaze_suffix", "audio_suffix", "layout"}
    unknown = set(values) - known
    if unknown:
        raise ParseError(f"manifest: unknown keys {sorted(unknown)}")
    unit = values.get("timestamp_unit", UNIT_MS)
    if unit not in (UNIT_MS, UNIT_S):
        raise ParseError(f"manifest: timestamp_unit must be ms or s, got {unit!r}")
    return DatasetManifest(
        timestamp_unit=unit,
        eeg_suffix=values.get("eeg_suffix", ".eeg"),
        gaze_suffix=values.get("gaze_suffix", ".et"),
        audio_suffix=values.get("audio_suffix", ".wav"),
        layout=values.get("layout") or None,
    )


def read_boundary_manifest(data: bytes) -> list[tuple[TrialKey, float, float]]:
    """Parse segmentation boundaries: one ``basename,start_s,end_s`` per line.

    A header row is tolerated and skipped when its first cell is not a
    parseable basename.
    """
    boundaries: list[tuple[TrialKey, float, float]] = []
    for line_no, raw_line in enumerate(data.decode("utf-8").splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        delimiter = "\t" if "\t" in line else ","
        cells = [cell.strip() for cell in line.split(delimiter)]
        if len(cells) != 3:
            raise ParseError(
                f"boundary manifest line {line_no}: expected 3 columns, got {len(cells)}"
            )
        try:
            key = parse_trial_basename(cells[0])
        except Exception:
            if line_no == 1:  # header row
                continue
            raise ParseError(
                f"boundary manifest line {line_no}: bad basename {cells[0]!r}"
            ) from None
        try:
            start_s, end_s = float(cells[1]), float(cells[2])
        except ValueError:
            raise ParseError(
                f"boundary manifest line {line_no}: non-numeric bounds"
            ) from None
        boundaries.append((key, start_s, end_s))
    return boundaries
