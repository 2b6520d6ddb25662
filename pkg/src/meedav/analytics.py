"""Feature computations over aligned trials.

Gaze-intensity bar series, channel validity flags, screen-space KDE
heatmaps, RMS amplitude envelopes, and windowed cross-modal correlation.
All functions are pure; inputs are numpy-coercible sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from sklearn.base import BaseEstimator

from .align import GRID_RATE_HZ, SCREEN_HEIGHT_PX, SCREEN_WIDTH_PX, AlignedTrial
from .denoise import DenoiseResult
from .errors import (
    BadParameter,
    EmptyPoints,
    InsufficientData,
    MissingModality,
    WindowTooSmall,
)
from .validation import (
    as_float_matrix,
    as_float_vector,
    check_not_empty,
    check_positive,
    check_same_length,
)

DEFAULT_INTENSITY_WINDOW_S = 0.1
DEFAULT_FLATLINE_UV = 1.0
DEFAULT_SATURATION_UV = 1800.0
DEFAULT_CORR_WINDOW_S = 1.0
DEFAULT_CORR_STRIDE_S = 0.5

# correlations operate on series resampled to 10 ms resolution
CORR_STEP_S = 0.01

KDE_GRID_N = 100
# half-cell floors keep a single-point KDE visibly peaked
KDE_MIN_BANDWIDTH_X = SCREEN_WIDTH_PX / KDE_GRID_N / 2.0
KDE_MIN_BANDWIDTH_Y = SCREEN_HEIGHT_PX / KDE_GRID_N / 2.0

REASON_OK = "ok"
REASON_FLATLINE = "flatline"
REASON_SATURATED = "saturated"

CORRELATION_METHODS = ("pearson", "spearman", "kendall")
CORRELATION_TARGETS = ("audio", "gaze_intensity")


class IntensityWindow(NamedTuple):
    start_s: float
    horizontal: float
    vertical: float
    total: float


@dataclass(frozen=True)
class IntensitySeries:
    """Windowed gaze-motion magnitudes on a shared normalized scale.

    The horizontal and vertical sums are divided by the same global
    maximum as the totals, so the max total is 1 for any nonzero motion
    and horizontal + vertical = total per window. ``peak_motion`` keeps
    the normalization denominator (pixels of motion in the busiest
    window), the only scale information the normalized values lose.
    """

    window_s: float
    windows: tuple[IntensityWindow, ...]
    peak_motion: float = 0.0

    @property
    def totals(self) -> np.ndarray:
        return np.array([w.total for w in self.windows])

    @property
    def starts(self) -> np.ndarray:
        return np.array([w.start_s for w in self.windows])


class ChannelCheck(NamedTuple):
    valid: bool
    p2p: float
    reason: str


@dataclass(frozen=True)
class HeatmapGrid:
    """Gaussian KDE over screen coordinates, rows indexed by y."""

    density: np.ndarray
    extent: tuple[float, float]
    event_kind: str
    bandwidth: tuple[float, float]

    @property
    def cell_area(self) -> float:
        return (self.extent[0] / KDE_GRID_N) * (self.extent[1] / KDE_GRID_N)


@dataclass(frozen=True)
class CorrelationSeries:
    """Per-window coefficients for one channel.

    Windows with undefined correlation (zero variance on either side)
    carry None; the mean covers defined windows only and is None when
    there are none.
    """

    mean: Optional[float]
    windows: tuple[tuple[float, Optional[float]], ...]


@dataclass(frozen=True)
class CorrelationReport:
    method: str
    target: str
    window_s: float
    stride_s: float
    per_channel: dict[str, CorrelationSeries]


def gaze_motion_magnitude(gaze_x, gaze_y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Frame-to-frame L1 gaze displacement.

    Returns (h, v, m) with h_t = |x_t - x_{t-1}|, v_t = |y_t - y_{t-1}|,
    m = h + v, each of length input - 1.
    """
    x = as_float_vector(gaze_x, "gaze_x")
    y = as_float_vector(gaze_y, "gaze_y")
    check_same_length(x, y, "gaze_x", "gaze_y")
    if x.size < 2:
        raise InsufficientData("motion magnitude needs at least 2 samples")
    h = np.abs(np.diff(x))
    v = np.abs(np.diff(y))
    return h, v, h + v


def _window_slots(times: np.ndarray, window_s: float) -> tuple[np.ndarray, int]:
    # 1e-9 absorbs float rounding at exact window boundaries; the time
    # grids in play are orders of magnitude coarser than that
    n_windows = int(np.floor(times[-1] / window_s + 1e-9)) + 1
    idx = np.floor(times / window_s + 1e-9).astype(int)
    return np.clip(idx, 0, n_windows - 1), n_windows


def gaze_intensity(
    gaze_x, gaze_y, grid, window_s: float = DEFAULT_INTENSITY_WINDOW_S
) -> IntensitySeries:
    """Windowed, max-normalized gaze motion split into h/v components.

    Motion magnitudes are summed over consecutive windows of ``window_s``
    seconds, then horizontal, vertical, and total sums are all divided by
    the single largest total. All-zero motion yields all-zero windows.
    """
    check_positive(window_s, "window_s")
    t = as_float_vector(grid, "grid")
    x = as_float_vector(gaze_x, "gaze_x")
    check_same_length(x, t, "gaze_x", "grid")
    h, v, _ = gaze_motion_magnitude(gaze_x, gaze_y)

    # a motion sample belongs to the window of its later endpoint
    times = t[1:] - t[0]
    idx, n_windows = _window_slots(times, window_s)
    h_sums = np.bincount(idx, weights=h, minlength=n_windows)
    v_sums = np.bincount(idx, weights=v, minlength=n_windows)
    totals = h_sums + v_sums

    peak = totals.max()
    if peak > 0.0:
        h_sums = h_sums / peak
        v_sums = v_sums / peak
        totals = totals / peak

    windows = tuple(
        IntensityWindow(k * window_s, float(h_sums[k]), float(v_sums[k]), float(totals[k]))
        for k in range(n_windows)
    )
    return IntensitySeries(window_s=window_s, windows=windows, peak_motion=float(peak))


def channel_validity(
    eeg,
    flatline_uv: float = DEFAULT_FLATLINE_UV,
    saturation_uv: float = DEFAULT_SATURATION_UV,
) -> list[ChannelCheck]:
    """Peak-to-peak amplitude screen, one ChannelCheck per row."""
    X = as_float_matrix(eeg, "eeg")
    if X.shape[1] < 2:
        raise InsufficientData("peak-to-peak needs at least 2 samples")
    checks = []
    for row in X:
        p2p = float(np.ptp(row))
        if p2p < flatline_uv:
            reason = REASON_FLATLINE
        elif p2p > saturation_uv:
            reason = REASON_SATURATED
        else:
            reason = REASON_OK
        checks.append(ChannelCheck(reason == REASON_OK, p2p, reason))
    return checks


def _scott_bandwidths(pts: np.ndarray) -> tuple[float, float]:
    n = pts.shape[0]
    if n > 1:
        sx, sy = pts.std(axis=0, ddof=1)
    else:
        sx = sy = 0.0
    factor = n ** (-1.0 / 6.0)
    return (
        max(float(sx) * factor, KDE_MIN_BANDWIDTH_X),
        max(float(sy) * factor, KDE_MIN_BANDWIDTH_Y),
    )


def kde_heatmap(
    points,
    event_kind: str,
    bandwidth: Optional[tuple[float, float]] = None,
) -> HeatmapGrid:
    """Product-Gaussian KDE of screen positions on a 100x100 grid.

    Density is evaluated at cell centers of [0, 1280] x [0, 1024];
    row index runs along y, column index along x. Bandwidth per axis is
    Scott's rule (sigma * n^(-1/6)) floored at half a cell width unless
    overridden.
    """
    pts = np.asarray(points, float)
    if pts.size == 0:
        raise EmptyPoints("KDE needs at least one point")
    pts = pts.reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise BadParameter("points must be finite")

    if bandwidth is not None:
        hx, hy = float(bandwidth[0]), float(bandwidth[1])
        check_positive(hx, "bandwidth_x")
        check_positive(hy, "bandwidth_y")
    else:
        hx, hy = _scott_bandwidths(pts)

    step_x = SCREEN_WIDTH_PX / KDE_GRID_N
    step_y = SCREEN_HEIGHT_PX / KDE_GRID_N
    xc = (np.arange(KDE_GRID_N) + 0.5) * step_x
    yc = (np.arange(KDE_GRID_N) + 0.5) * step_y

    def axis_kernels(centers, values, h):
        z = (centers[None, :] - values[:, None]) / h
        return np.exp(-0.5 * z**2) / (np.sqrt(2.0 * np.pi) * h)

    gx = axis_kernels(xc, pts[:, 0], hx)  # (n, 100)
    gy = axis_kernels(yc, pts[:, 1], hy)
    density = gy.T @ gx / pts.shape[0]
    return HeatmapGrid(
        density=density,
        extent=(SCREEN_WIDTH_PX, SCREEN_HEIGHT_PX),
        event_kind=event_kind,
        bandwidth=(hx, hy),
    )


def event_positions(trial: AlignedTrial, kind: str) -> list[tuple[float, float]]:
    """Screen positions at the onsets of one event kind.

    Gaze coordinates are read off the aligned traces at each onset time;
    trials without gaze have no events and yield an empty list.
    """
    if not trial.has_gaze:
        return []
    return [
        (
            float(np.interp(t, trial.grid, trial.gaze_x)),
            float(np.interp(t, trial.grid, trial.gaze_y)),
        )
        for t, label in trial.gaze_events
        if label == kind
    ]


class ScreenKde(BaseEstimator):
    """Estimator-style front end for the screen heatmap.

    ``fit`` takes (n, 2) pixel coordinates; the evaluated grid and chosen
    bandwidths are exposed as trailing-underscore attributes, mirroring
    how sklearn's KernelDensity separates fitting from evaluation.
    """

    def __init__(self, event_kind: str = "fixation", bandwidth=None):
        self.event_kind = event_kind
        self.bandwidth = bandwidth

    def fit(self, X, y=None):
        grid = kde_heatmap(X, self.event_kind, self.bandwidth)
        self.grid_ = grid
        self.density_ = grid.density
        self.bandwidth_ = grid.bandwidth
        return self


def audio_envelope(samples, sample_rate: float, frame_s: float) -> tuple[np.ndarray, np.ndarray]:
    """Frame-wise RMS envelope, peak-normalized.

    Frames are consecutive ``frame_s`` buckets of the sample clock, so
    the returned times are k * frame_s regardless of whether frame_s is
    an integer number of samples. Silent input stays all zero.
    """
    s = as_float_vector(samples, "samples")
    check_not_empty(s, "samples")
    check_positive(sample_rate, "sample_rate")
    check_positive(frame_s, "frame_s")

    times = np.arange(s.size) / sample_rate
    idx, n_frames = _window_slots(times, frame_s)
    counts = np.bincount(idx, minlength=n_frames)
    power = np.bincount(idx, weights=s**2, minlength=n_frames)
    rms = np.sqrt(np.divide(power, counts, out=np.zeros(n_frames), where=counts > 0))

    peak = rms.max()
    if peak > 0.0:
        rms = rms / peak
    return np.arange(n_frames) * frame_s, rms


def _pearson(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return None
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def _average_ranks(v: np.ndarray) -> np.ndarray:
    order = np.argsort(v, kind="stable")
    ranks = np.empty(v.size)
    sv = v[order]
    i = 0
    while i < v.size:
        j = i
        while j < v.size and sv[j] == sv[i]:
            j += 1
        ranks[order[i:j]] = 0.5 * (i + j - 1) + 1.0  # average rank, 1-based
        i = j
    return ranks


def _spearman(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    return _pearson(_average_ranks(x), _average_ranks(y))


def _tie_term(v: np.ndarray) -> float:
    _, counts = np.unique(v, return_counts=True)
    return float(np.sum(counts * (counts - 1)) / 2.0)


def _kendall(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    # tau-b: concordant minus discordant over the tie-corrected pair count
    n = x.size
    sx = np.sign(x[:, None] - x[None, :])
    sy = np.sign(y[:, None] - y[None, :])
    upper = np.triu_indices(n, k=1)
    numerator = float(np.sum(sx[upper] * sy[upper]))
    n0 = n * (n - 1) / 2.0
    denom = np.sqrt((n0 - _tie_term(x)) * (n0 - _tie_term(y)))
    if denom == 0.0:
        return None
    return float(np.clip(numerator / denom, -1.0, 1.0))


_METHOD_FUNCS = {"pearson": _pearson, "spearman": _spearman, "kendall": _kendall}


def windowed_correlation(
    a,
    b,
    method: str = "pearson",
    window_s: float = DEFAULT_CORR_WINDOW_S,
    stride_s: float = DEFAULT_CORR_STRIDE_S,
) -> CorrelationSeries:
    """Sliding-window correlation of two 10 ms resolution sequences.

    Pearson uses the N-1 sample convention; Spearman is Pearson on
    average ranks; Kendall is tau-b. Zero-variance windows yield None.
    """
    x = as_float_vector(a, "a")
    y = as_float_vector(b, "b")
    check_same_length(x, y, "a", "b")
    if method not in _METHOD_FUNCS:
        raise BadParameter(f"unknown correlation method {method!r}")
    check_positive(stride_s, "stride_s")

    wlen = int(round(window_s / CORR_STEP_S))
    if wlen < 2:
        raise WindowTooSmall(
            f"window_s={window_s} spans {wlen} samples at 10 ms resolution, need >= 2"
        )
    step = max(1, int(round(stride_s / CORR_STEP_S)))
    func = _METHOD_FUNCS[method]

    windows = []
    for start in range(0, x.size - wlen + 1, step):
        r = func(x[start : start + wlen], y[start : start + wlen])
        windows.append((start * CORR_STEP_S, r))
    defined = [r for _, r in windows if r is not None]
    mean = float(np.mean(defined)) if defined else None
    return CorrelationSeries(mean=mean, windows=tuple(windows))


def correlate_trial(
    trial: AlignedTrial,
    denoised: Optional[DenoiseResult] = None,
    method: str = "pearson",
    target: str = "audio",
    window_s: float = DEFAULT_CORR_WINDOW_S,
    stride_s: float = DEFAULT_CORR_STRIDE_S,
) -> CorrelationReport:
    """Windowed correlation of every EEG channel against a target series.

    The target is either the trial's audio RMS envelope or its gaze
    intensity totals, computed directly at 10 ms resolution; channels are
    linearly interpolated onto the same 100 Hz axis. Cleaned EEG is used
    when ``denoised`` is supplied.
    """
    if target not in CORRELATION_TARGETS:
        raise BadParameter(f"unknown correlation target {target!r}")
    if method not in _METHOD_FUNCS:
        raise BadParameter(f"unknown correlation method {method!r}")

    if target == "audio":
        if not trial.has_audio:
            raise MissingModality("trial has no audio modality")
        axis, target_series = audio_envelope(trial.audio, GRID_RATE_HZ, CORR_STEP_S)
    else:
        if not trial.has_gaze:
            raise MissingModality("trial has no gaze modality")
        series = gaze_intensity(trial.gaze_x, trial.gaze_y, trial.grid, window_s=CORR_STEP_S)
        axis, target_series = series.starts, series.totals

    eeg = denoised.cleaned if denoised is not None else trial.eeg
    per_channel = {}
    for name, row in zip(trial.channel_names, eeg):
        resampled = np.interp(axis, trial.grid, row)
        per_channel[name] = windowed_correlation(
            resampled, target_series, method=method, window_s=window_s, stride_s=stride_s
        )
    return CorrelationReport(
        method=method,
        target=target,
        window_s=window_s,
        stride_s=stride_s,
        per_channel=per_channel,
    )
