"""Synchronized EEG / eye-tracking / audio trials: ingest, alignment,
FastICA denoising, analytics, and an HTTP service around them."""

from .align import (
    GRID_RATE_HZ,
    SCREEN_HEIGHT_PX,
    SCREEN_WIDTH_PX,
    AlignedTrial,
    align_trial,
    map_gaze_to_screen,
    normalize_audio,
    resample_linear,
    to_relative_seconds,
)
from .analytics import (
    ChannelCheck,
    CorrelationReport,
    CorrelationSeries,
    HeatmapGrid,
    IntensitySeries,
    ScreenKde,
    audio_envelope,
    channel_validity,
    correlate_trial,
    event_positions,
    gaze_intensity,
    gaze_motion_magnitude,
    kde_heatmap,
    windowed_correlation,
)
from .denoise import (
    ArtifactCriteria,
    DenoiseResult,
    FastIcaDenoiser,
    component_kurtosis,
    denoise_eeg,
    detect_artifact_components,
    fast_ica,
    whiten,
)
from .errors import MeedavError
from .ingest import (
    GithubBackend,
    LocalBackend,
    TrialKey,
    TrialRecordSet,
    backend_from_env,
    discover_trials,
    load_audio,
    load_eeg,
    load_gaze,
    parse_trial_basename,
)
from .service import create_app
from .synth import generate_dataset
from .workspace import TrialWorkspace

__version__ = "0.1.0"

__all__ = [
    "AlignedTrial",
    "ArtifactCriteria",
    "ChannelCheck",
    "CorrelationReport",
    "CorrelationSeries",
    "DenoiseResult",
    "FastIcaDenoiser",
    "GRID_RATE_HZ",
    "GithubBackend",
    "HeatmapGrid",
    "IntensitySeries",
    "LocalBackend",
    "MeedavError",
    "SCREEN_HEIGHT_PX",
    "SCREEN_WIDTH_PX",
    "ScreenKde",
    "TrialKey",
    "TrialRecordSet",
    "TrialWorkspace",
    "align_trial",
    "audio_envelope",
    "backend_from_env",
    "channel_validity",
    "component_kurtosis",
    "correlate_trial",
    "create_app",
    "denoise_eeg",
    "detect_artifact_components",
    "discover_trials",
    "event_positions",
    "fast_ica",
    "gaze_intensity",
    "gaze_motion_magnitude",
    "generate_dataset",
    "kde_heatmap",
    "load_audio",
    "load_eeg",
    "load_gaze",
    "map_gaze_to_screen",
    "normalize_audio",
    "parse_trial_basename",
    "resample_linear",
    "to_relative_seconds",
    "whiten",
    "windowed_correlation",
    "__version__",
]
