"""Dataset discovery: group files by basename into trial record sets."""

from __future__ import annotations

import warnings

from ..errors import DiscoveryWarning, MalformedBasename
from .backends import StorageBackend
from .keys import parse_trial_basename
from .manifest import MANIFEST_FILENAME, DatasetManifest, parse_dataset_manifest
from .records import TrialRecordSet


def _is_dataset_metadata(path: str) -> bool:
    # the manifest and underscore-prefixed sidecars belong to the dataset
    # itself, not to any trial
    filename = path.rsplit("/", 1)[-1]
    return filename == MANIFEST_FILENAME or filename.startswith("_")


def load_manifest(backend: StorageBackend) -> DatasetManifest:
    """The dataset's manifest, or defaults when it ships none."""
    try:
        files = backend.list_files()
    except Exception:
        files = []
    if MANIFEST_FILENAME in files:
        return parse_dataset_manifest(backend.read(MANIFEST_FILENAME))
    return DatasetManifest()


def discover_trials(
    backend: StorageBackend,
    manifest: DatasetManifest | None = None,
) -> list[TrialRecordSet]:
    """One record set per basename that has an EEG file, sorted by key.

    Per-file problems (unrecognized names, malformed basenames, basenames
    lacking EEG) are reported as DiscoveryWarnings and never abort the
    scan. The result is deterministic for a fixed file listing regardless
    of listing order.
    """
    if manifest is None:
        manifest = load_manifest(backend)

    grouped: dict[str, dict[str, str]] = {}
    for path in sorted(backend.list_files()):
        if _is_dataset_metadata(path):
            continue
        classified = manifest.classify(path)
        if classified is None:
            warnings.warn(
                f"{path}: no modality suffix recognized; skipped",
                DiscoveryWarning,
                stacklevel=2,
            )
            continue
        modality, basename = classified
        try:
            parse_trial_basename(basename)
        except MalformedBasename as exc:
            warnings.warn(f"{path}: {exc}", DiscoveryWarning, stacklevel=2)
            continue
        grouped.setdefault(basename, {})[modality] = path

    record_sets = []
    for basename in sorted(grouped):
        paths = grouped[basename]
        if "eeg" not in paths:
            warnings.warn(
                f"{basename}: no EEG file; trial excluded",
                DiscoveryWarning,
                stacklevel=2,
            )
            continue
        record_sets.append(
            TrialRecordSet(
                key=parse_trial_basename(basename),
                eeg_path=paths["eeg"],
                gaze_path=paths.get("gaze"),
                audio_path=paths.get("audio"),
            )
        )
    record_sets.sort(key=lambda rs: (rs.key.participant, rs.key.stimulus, rs.key.order))
    return record_sets
