"""Trial discovery and per-modality file parsing."""

from .audio import SEGMENT_RATE_HZ, load_audio, segment_raw_audio, write_wav
from .backends import (
    BACKEND_ENV,
    GithubBackend,
    LocalBackend,
    StorageBackend,
    TOKEN_ENV,
    backend_from_env,
    fetch_blob,
    list_remote_tree,
    parse_backend_spec,
)
from .discovery import discover_trials, load_manifest
from .keys import TrialKey, parse_trial_basename
from .manifest import (
    MANIFEST_FILENAME,
    DatasetManifest,
    parse_dataset_manifest,
    read_boundary_manifest,
)
from .records import (
    AudioRecord,
    CANONICAL_EVENTS,
    EVENT_BLINK,
    EVENT_FIXATION,
    EVENT_SACCADE,
    EegRecord,
    GazeRecord,
    TrialRecordSet,
    UNIT_MS,
    UNIT_S,
    normalize_event,
)
from .tabular import load_eeg, load_gaze

__all__ = [
    "AudioRecord",
    "BACKEND_ENV",
    "CANONICAL_EVENTS",
    "DatasetManifest",
    "EVENT_BLINK",
    "EVENT_FIXATION",
    "EVENT_SACCADE",
    "EegRecord",
    "GazeRecord",
    "GithubBackend",
    "LocalBackend",
    "MANIFEST_FILENAME",
    "SEGMENT_RATE_HZ",
    "StorageBackend",
    "TOKEN_ENV",
    "TrialKey",
    "TrialRecordSet",
    "UNIT_MS",
    "UNIT_S",
    "backend_from_env",
    "discover_trials",
    "fetch_blob",
    "list_remote_tree",
    "load_audio",
    "load_eeg",
    "load_gaze",
    "load_manifest",
    "normalize_event",
    "parse_backend_spec",
    "parse_dataset_manifest",
    "parse_trial_basename",
    "read_boundary_manifest",
    "segment_raw_audio",
    "write_wav",
]
