"""Gaze intensity, validity, KDE heatmaps, envelopes, and correlations."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import stats
from sklearn.base import clone

from meedav.align import AlignedTrial
from meedav.analytics import (
    CORR_STEP_S,
    KDE_GRID_N,
    KDE_MIN_BANDWIDTH_X,
    KDE_MIN_BANDWIDTH_Y,
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
from meedav.errors import (
    BadParameter,
    EmptyPoints,
    InsufficientData,
    LengthMismatch,
    MissingModality,
    WindowTooSmall,
)

# gaze coordinates in quarter-pixel steps stay exact through subtraction
# and summation, so invariance properties can assert bitwise equality
quarter_px = st.integers(min_value=0, max_value=5120).map(lambda k: k * 0.25)


# --- motion magnitude ----------------------------------------------------

def test_motion_magnitude_hand_example():
    h, v, m = gaze_motion_magnitude([0.0, 10.0, 10.0], [0.0, 0.0, 5.0])
    assert h.tolist() == [10.0, 0.0]
    assert v.tolist() == [0.0, 5.0]
    assert m.tolist() == [10.0, 5.0]


def test_motion_magnitude_is_l1_not_euclidean():
    _, _, m = gaze_motion_magnitude([0.0, 3.0], [0.0, 4.0])
    assert m.tolist() == [7.0]


def test_motion_magnitude_constant_gaze():
    _, _, m = gaze_motion_magnitude([5.0, 5.0, 5.0], [9.0, 9.0, 9.0])
    assert m.tolist() == [0.0, 0.0]


def test_motion_magnitude_errors():
    with pytest.raises(InsufficientData):
        gaze_motion_magnitude([1.0], [1.0])
    with pytest.raises(LengthMismatch):
        gaze_motion_magnitude([1.0, 2.0], [1.0])


# --- gaze intensity ------------------------------------------------------

def test_intensity_single_window_self_normalizes():
    grid = np.array([0.0, 0.02, 0.04])
    series = gaze_intensity([0.0, 10.0, 10.0], [0.0, 0.0, 5.0], grid, window_s=0.1)
    assert len(series.windows) == 1
    w = series.windows[0]
    assert w.total == 1.0
    assert w.horizontal == pytest.approx(10.0 / 15.0)
    assert w.vertical == pytest.approx(5.0 / 15.0)
    assert series.peak_motion == 15.0


def test_intensity_two_windows_normalized_by_max():
    # motion sums 20 then 5 -> totals [1.0, 0.25]
    grid = np.array([0.0, 0.05, 0.15])
    series = gaze_intensity([0.0, 20.0, 25.0], [0.0, 0.0, 0.0], grid, window_s=0.1)
    assert series.totals.tolist() == [1.0, 0.25]
    assert series.peak_motion == 20.0
    assert series.starts.tolist() == [0.0, 0.1]


def test_intensity_zero_motion_all_zero():
    grid = np.arange(10) / 256.0
    series = gaze_intensity(np.full(10, 3.0), np.full(10, 4.0), grid)
    assert series.totals.tolist() == [0.0]
    assert series.peak_motion == 0.0


def test_intensity_window_count_covers_span():
    grid = np.arange(90) / 256.0  # 0.3477 s
    series = gaze_intensity(np.arange(90.0), np.zeros(90), grid, window_s=0.1)
    assert series.starts.tolist() == [0.0, 0.1, 0.2, 0.30000000000000004]
    assert len(series.windows) == 4


def test_intensity_sample_belongs_to_window_of_later_endpoint():
    # only step crosses 0.1 s: diff between samples at 0.09 and 0.11
    grid = np.array([0.0, 0.09, 0.11])
    series = gaze_intensity([0.0, 0.0, 8.0], [0.0, 0.0, 0.0], grid, window_s=0.1)
    assert series.totals.tolist() == [0.0, 1.0]


def test_intensity_rejects_bad_window():
    grid = np.arange(4) / 256.0
    with pytest.raises(BadParameter):
        gaze_intensity(np.arange(4.0), np.zeros(4), grid, window_s=0.0)


@given(
    xs=st.lists(quarter_px, min_size=2, max_size=60),
    ys=st.lists(quarter_px, min_size=2, max_size=60),
    shift_x=st.integers(min_value=-4000, max_value=4000).map(lambda k: k * 0.25),
    shift_y=st.integers(min_value=-4000, max_value=4000).map(lambda k: k * 0.25),
)
@settings(max_examples=100, deadline=None)
def test_intensity_translation_invariant(xs, ys, shift_x, shift_y):
    n = min(len(xs), len(ys))
    x, y = np.array(xs[:n]), np.array(ys[:n])
    grid = np.arange(n) / 256.0
    base = gaze_intensity(x, y, grid)
    moved = gaze_intensity(x + shift_x, y + shift_y, grid)
    assert moved.windows == base.windows
    assert moved.peak_motion == base.peak_motion


@given(
    xs=st.lists(quarter_px, min_size=2, max_size=60),
    ys=st.lists(quarter_px, min_size=2, max_size=60),
    scale=st.sampled_from([0.25, 0.5, 2.0, 4.0, 8.0]),
)
@settings(max_examples=100, deadline=None)
def test_intensity_normalized_values_scale_invariant(xs, ys, scale):
    # power-of-two scales keep every intermediate exact, so the
    # normalized series must match bit for bit
    n = min(len(xs), len(ys))
    x, y = np.array(xs[:n]), np.array(ys[:n])
    grid = np.arange(n) / 256.0
    base = gaze_intensity(x, y, grid)
    scaled = gaze_intensity(scale * x, scale * y, grid)
    assert scaled.windows == base.windows
    assert scaled.peak_motion == scale * base.peak_motion


@given(
    xs=st.lists(quarter_px, min_size=2, max_size=60),
    ys=st.lists(quarter_px, min_size=2, max_size=60),
)
@settings(max_examples=100, deadline=None)
def test_intensity_additivity_and_bounds(xs, ys):
    n = min(len(xs), len(ys))
    x, y = np.array(xs[:n]), np.array(ys[:n])
    grid = np.arange(n) / 256.0
    series = gaze_intensity(x, y, grid)
    for w in series.windows:
        assert w.horizontal + w.vertical == pytest.approx(w.total, abs=1e-12)
        assert 0.0 <= w.horizontal <= 1.0
        assert 0.0 <= w.vertical <= 1.0
    if series.peak_motion > 0:
        assert series.totals.max() == 1.0
    else:
        assert not series.totals.any()


# --- channel validity ----------------------------------------------------

def test_validity_classifies_by_p2p():
    t = np.arange(512) / 256.0
    eeg = np.vstack(
        [
            np.full(512, 800.0),  # constant -> flatline
            800.0 + 50.0 * np.sin(2 * np.pi * 10 * t),  # +/-50 uV -> ok
            1000.0 * np.sign(np.sin(2 * np.pi * 10 * t)),  # 2000 p2p -> saturated
        ]
    )
    checks = channel_validity(eeg)
    assert [c.reason for c in checks] == ["flatline", "ok", "saturated"]
    assert [c.valid for c in checks] == [False, True, False]
    assert checks[0].p2p == 0.0
    assert checks[1].p2p == pytest.approx(100.0, abs=0.1)
    assert checks[2].p2p == 2000.0


def test_validity_boundaries_are_strict():
    # p2p exactly at a threshold counts as ok on both ends
    eeg = np.array([[0.0, 1.0], [0.0, 1800.0], [0.0, 0.999], [0.0, 1800.5]])
    reasons = [c.reason for c in channel_validity(eeg)]
    assert reasons == ["ok", "ok", "flatline", "saturated"]


def test_validity_custom_thresholds():
    eeg = np.array([[0.0, 5.0]])
    assert channel_validity(eeg, flatline_uv=10.0)[0].reason == "flatline"
    assert channel_validity(eeg, flatline_uv=1.0, saturation_uv=4.0)[0].reason == "saturated"


def test_validity_needs_two_samples():
    with pytest.raises(InsufficientData):
        channel_validity(np.array([[1.0]]))


@given(
    base=st.floats(min_value=0.5, max_value=50.0),
    steps=st.lists(st.floats(min_value=1.0, max_value=4.0), min_size=1, max_size=8),
)
@settings(max_examples=100, deadline=None)
def test_validity_monotone_under_amplification(base, steps):
    """Growing a channel can only walk flatline -> ok -> saturated."""
    order = {"flatline": 0, "ok": 1, "saturated": 2}
    signal = np.array([-0.5, 0.5])  # unit p2p
    amplitude = base
    seen = []
    for step in [1.0] + steps:
        amplitude *= step
        reason = channel_validity((amplitude * signal)[None, :])[0].reason
        seen.append(order[reason])
    assert all(a <= b for a, b in zip(seen, seen[1:]))


# --- KDE heatmap ---------------------------------------------------------

def test_kde_single_point_peaks_in_its_cell():
    # (326.4, 721.92) is the center of column 25, row 70
    grid = kde_heatmap([(326.4, 721.92)], "fixation")
    assert grid.density.shape == (KDE_GRID_N, KDE_GRID_N)
    row, col = np.unravel_index(np.argmax(grid.density), grid.density.shape)
    assert (row, col) == (70, 25)
    assert grid.bandwidth == (KDE_MIN_BANDWIDTH_X, KDE_MIN_BANDWIDTH_Y)
    assert grid.event_kind == "fixation"


def test_kde_center_point_peaks_at_screen_center():
    grid = kde_heatmap([(640.0, 512.0)] * 5, "fixation")
    row, col = np.unravel_index(np.argmax(grid.density), grid.density.shape)
    # (640, 512) sits on the boundary between cells 49 and 50 on each axis
    assert row in (49, 50) and col in (49, 50)


def test_kde_two_clusters_two_local_maxima():
    rng = np.random.default_rng(21)
    cluster_a = rng.normal([200.0, 200.0], 15.0, size=(50, 2))
    cluster_b = rng.normal([1100.0, 800.0], 15.0, size=(50, 2))
    grid = kde_heatmap(np.vstack([cluster_a, cluster_b]), "fixation")
    d = grid.density
    interior = d[1:-1, 1:-1]
    neighbors = np.stack(
        [
            d[1 + di : d.shape[0] - 1 + di, 1 + dj : d.shape[1] - 1 + dj]
            for di in (-1, 0, 1)
            for dj in (-1, 0, 1)
            if (di, dj) != (0, 0)
        ]
    )
    maxima = np.argwhere(np.all(interior > neighbors, axis=0)) + 1
    assert len(maxima) == 2
    centers_y = (maxima[:, 0] + 0.5) * 10.24
    centers_x = (maxima[:, 1] + 0.5) * 12.8
    found = sorted(zip(centers_x, centers_y))
    assert abs(found[0][0] - 200.0) < 40 and abs(found[0][1] - 200.0) < 40
    assert abs(found[1][0] - 1100.0) < 40 and abs(found[1][1] - 800.0) < 40


def test_kde_mass_conservation_interior_points():
    rng = np.random.default_rng(22)
    pts = rng.uniform([200.0, 200.0], [1080.0, 824.0], size=(500, 2))
    grid = kde_heatmap(pts, "fixation")
    mass = grid.density.sum() * grid.cell_area
    assert abs(mass - 1.0) < 0.05
    assert np.all(grid.density >= 0.0)


def test_kde_matches_brute_force_oracle():
    pts = np.array([[300.0, 400.0], [900.0, 700.0], [640.0, 100.0]])
    hx, hy = 80.0, 60.0
    grid = kde_heatmap(pts, "saccade", bandwidth=(hx, hy))
    assert grid.bandwidth == (80.0, 60.0)

    xc = (np.arange(KDE_GRID_N) + 0.5) * 12.8
    yc = (np.arange(KDE_GRID_N) + 0.5) * 10.24
    expected = np.zeros((KDE_GRID_N, KDE_GRID_N))
    for px, py in pts:
        for i, y in enumerate(yc):
            gy = np.exp(-0.5 * ((y - py) / hy) ** 2) / (np.sqrt(2 * np.pi) * hy)
            gx = np.exp(-0.5 * ((xc - px) / hx) ** 2) / (np.sqrt(2 * np.pi) * hx)
            expected[i] += gy * gx
    expected /= len(pts)
    assert np.allclose(grid.density, expected, atol=1e-15)


def test_kde_scott_bandwidth_above_floor():
    rng = np.random.default_rng(23)
    pts = rng.uniform([0.0, 0.0], [1280.0, 1024.0], size=(100, 2))
    grid = kde_heatmap(pts, "fixation")
    factor = 100 ** (-1.0 / 6.0)
    assert grid.bandwidth[0] == pytest.approx(pts[:, 0].std(ddof=1) * factor)
    assert grid.bandwidth[1] == pytest.approx(pts[:, 1].std(ddof=1) * factor)
    assert grid.bandwidth[0] > KDE_MIN_BANDWIDTH_X


def test_kde_rejects_empty_and_non_finite():
    with pytest.raises(EmptyPoints):
        kde_heatmap([], "fixation")
    with pytest.raises(BadParameter):
        kde_heatmap([(np.nan, 0.0)], "fixation")
    with pytest.raises(BadParameter):
        kde_heatmap([(0.0, 0.0)], "fixation", bandwidth=(0.0, 5.0))


def test_screen_kde_estimator():
    pts = [(100.0, 100.0), (110.0, 95.0), (105.0, 102.0)]
    est = ScreenKde(event_kind="saccade").fit(pts)
    direct = kde_heatmap(pts, "saccade")
    assert np.array_equal(est.density_, direct.density)
    assert est.bandwidth_ == direct.bandwidth
    assert est.grid_.event_kind == "saccade"
    assert clone(est).get_params() == {"event_kind": "saccade", "bandwidth": None}


# --- audio envelope ------------------------------------------------------

def test_envelope_constant_signal_all_ones():
    times, env = audio_envelope(np.full(1000, 0.5), 1000.0, 0.01)
    assert env.tolist() == [1.0] * 100
    assert times.tolist() == pytest.approx((np.arange(100) * 0.01).tolist())


def test_envelope_silence_stays_zero():
    _, env = audio_envelope(np.zeros(500), 1000.0, 0.01)
    assert not env.any()


def test_envelope_sine_rms_ratio():
    # one frame of constant 1.0 (RMS 1) next to one frame of unit sine:
    # after peak normalization the sine frame reads exactly 1/sqrt(2)
    sine = np.sin(2 * np.pi * np.arange(10) / 10.0)
    samples = np.concatenate([np.ones(10), sine])
    _, env = audio_envelope(samples, 1000.0, 0.01)
    assert env[0] == 1.0
    assert env[1] == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-12)


def test_envelope_long_sine_rms():
    # frames far longer than the period: every frame ~ 1/sqrt(2) pre-norm
    t = np.arange(16000) / 16000.0
    samples = np.sin(2 * np.pi * 440.0 * t)
    _, env = audio_envelope(np.concatenate([np.ones(1600), samples]), 16000.0, 0.1)
    assert np.allclose(env[1:], 1.0 / np.sqrt(2.0), atol=0.01)


def test_envelope_empty_buckets_read_zero():
    # 10 Hz samples against 10 ms frames leave 9 empty buckets in between
    times, env = audio_envelope([1.0, 1.0], 10.0, 0.01)
    assert len(env) == 11
    assert env[0] == 1.0 and env[10] == 1.0
    assert not env[1:10].any()


def test_envelope_non_integer_samples_per_frame():
    rng = np.random.default_rng(24)
    times, env = audio_envelope(rng.normal(size=2048), 256.0, 0.01)
    assert len(env) == int(np.floor(2047 / 256.0 / 0.01 + 1e-9)) + 1
    assert np.all(np.isfinite(env))
    assert env.max() == 1.0


# --- windowed correlation ------------------------------------------------

def _single_window(a, b, method="pearson"):
    series = windowed_correlation(a, b, method=method, window_s=len(a) * CORR_STEP_S)
    assert len(series.windows) == 1
    return series.windows[0][1]


def test_pearson_spec_examples():
    assert _single_window([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]) == 1.0
    assert _single_window([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == -1.0
    assert _single_window([1.0, 2.0, 3.0], [1.0, 3.0, 2.0]) == pytest.approx(0.5)


def test_spearman_monotone_nonlinear_is_one():
    x = [1.0, 2.0, 3.0, 4.0, 5.0]
    y = [np.exp(v) for v in x]
    assert _single_window(x, y, "spearman") == 1.0
    assert _single_window(x, y[::-1], "spearman") == -1.0


def test_kendall_hand_example():
    # swaps in [1,2,3,4] vs [1,3,2,4]: one discordant pair of six
    tau = _single_window([1.0, 2.0, 3.0, 4.0], [1.0, 3.0, 2.0, 4.0], "kendall")
    assert tau == pytest.approx((5 - 1) / 6)


@pytest.mark.filterwarnings("ignore:An input array is constant")
@pytest.mark.parametrize("method,oracle", [
    ("pearson", lambda x, y: stats.pearsonr(x, y).statistic),
    ("spearman", lambda x, y: stats.spearmanr(x, y).statistic),
    ("kendall", lambda x, y: stats.kendalltau(x, y).statistic),
])
def test_methods_match_scipy_with_ties(method, oracle):
    rng = np.random.default_rng(25)
    for _ in range(25):
        n = rng.integers(3, 12)
        x = rng.integers(0, 4, n).astype(float)  # heavy ties
        y = rng.integers(0, 4, n).astype(float)
        ours = _single_window(x, y, method)
        expected = oracle(x, y)
        if np.isnan(expected):
            assert ours is None
        else:
            assert ours == pytest.approx(expected, abs=1e-12)


def test_zero_variance_window_is_none_and_skipped_in_mean():
    a = [1.0, 1.0, 2.0, 3.0]
    b = [5.0, 5.0, 4.0, 2.0]
    series = windowed_correlation(a, b, window_s=0.02, stride_s=0.01)
    coeffs = [r for _, r in series.windows]
    assert coeffs[0] is None  # both halves constant
    assert coeffs[1:] == [-1.0, -1.0]
    assert series.mean == -1.0


def test_all_windows_undefined_mean_none():
    series = windowed_correlation([1.0, 1.0, 1.0], [4.0, 5.0, 6.0], window_s=0.03)
    assert series.mean is None
    assert [r for _, r in series.windows] == [None]


def test_window_positions_and_count():
    a = np.arange(300, dtype=float)
    series = windowed_correlation(a, a, window_s=1.0, stride_s=0.5)
    assert [round(t, 3) for t, _ in series.windows] == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert series.mean == 1.0


def test_correlation_parameter_errors():
    with pytest.raises(WindowTooSmall):
        windowed_correlation([1.0, 2.0], [1.0, 2.0], window_s=0.01)
    with pytest.raises(LengthMismatch):
        windowed_correlation([1.0, 2.0], [1.0], window_s=0.02)
    with pytest.raises(BadParameter):
        windowed_correlation([1.0, 2.0], [3.0, 4.0], method="cosine", window_s=0.02)
    with pytest.raises(BadParameter):
        windowed_correlation([1.0, 2.0], [3.0, 4.0], window_s=0.02, stride_s=0.0)


@given(
    data=st.lists(
        st.tuples(
            st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
            st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
        ),
        min_size=2,
        max_size=12,
    ),
    method=st.sampled_from(["pearson", "spearman", "kendall"]),
)
@settings(max_examples=150, deadline=None)
def test_correlation_bounds(data, method):
    a = [p[0] for p in data]
    b = [p[1] for p in data]
    r = _single_window(a, b, method)
    if r is not None:
        assert -1.0 <= r <= 1.0


@given(
    values=st.lists(
        st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
        min_size=3,
        max_size=10,
    ),
    scale=st.floats(min_value=0.01, max_value=50.0),
    shift=st.floats(min_value=-500.0, max_value=500.0),
)
@settings(max_examples=100, deadline=None)
def test_pearson_invariant_under_positive_affine(values, scale, shift):
    # a visible spread keeps the affine map from collapsing to a
    # constant through cancellation
    assume(max(values) - min(values) > 1e-6)
    rng = np.random.default_rng(26)
    other = rng.normal(size=len(values)).tolist()
    base = _single_window(values, other)
    mapped = _single_window([scale * v + shift for v in values], other)
    assert mapped == pytest.approx(base, abs=1e-9)


# --- correlate_trial -----------------------------------------------------

def _bucket_constant_trial(duration_s=8.0, slope=0.6, offset=0.2, with_gaze=False):
    """Trial whose audio envelope is exactly linear in time.

    Audio is constant within each 10 ms bucket with bucket values affine
    in the bucket index, and the probe channel is affine in time, so the
    per-window Pearson correlation is exactly +/-1.
    """
    n = int(duration_s * 256) + 1
    grid = np.arange(n) / 256.0
    bucket = np.floor(grid / CORR_STEP_S + 1e-9).astype(int)
    n_buckets = bucket[-1] + 1
    values = offset + slope * np.arange(n_buckets) / (n_buckets - 1)
    audio = values[bucket]
    eeg = np.vstack([2.0 * grid + 5.0, -3.0 * grid + 1.0])
    kwargs = {}
    if with_gaze:
        kwargs = dict(
            gaze_x=640.0 + 100.0 * np.sin(2 * np.pi * grid),
            gaze_y=np.full(n, 512.0),
            gaze_events=[(0.0, "fixation")],
        )
    return AlignedTrial(
        grid=grid, eeg=eeg, channel_names=["RAW_A", "RAW_B"], audio=audio, **kwargs
    )


def test_correlate_trial_self_correlation_is_one():
    trial = _bucket_constant_trial()
    report = correlate_trial(trial, target="audio")
    assert set(report.per_channel) == {"RAW_A", "RAW_B"}
    assert report.per_channel["RAW_A"].mean == pytest.approx(1.0, abs=1e-12)
    assert report.per_channel["RAW_B"].mean == pytest.approx(-1.0, abs=1e-12)
    assert all(
        r == pytest.approx(1.0, abs=1e-12)
        for _, r in report.per_channel["RAW_A"].windows
    )


def test_correlate_trial_window_count():
    trial = _bucket_constant_trial(duration_s=8.0)
    report = correlate_trial(trial, target="audio", window_s=1.0, stride_s=0.5)
    # 801 envelope frames, 100-sample windows, 50-sample stride
    assert len(report.per_channel["RAW_A"].windows) == 15
    starts = [t for t, _ in report.per_channel["RAW_A"].windows]
    assert starts[0] == 0.0
    assert starts[-1] == pytest.approx(7.0)


def test_correlate_trial_gaze_target():
    trial = _bucket_constant_trial(with_gaze=True)
    report = correlate_trial(trial, target="gaze_intensity", method="spearman")
    assert report.target == "gaze_intensity"
    for series in report.per_channel.values():
        for _, r in series.windows:
            if r is not None:
                assert -1.0 <= r <= 1.0


def test_correlate_trial_missing_modality():
    trial = _bucket_constant_trial()
    with pytest.raises(MissingModality):
        correlate_trial(trial, target="gaze_intensity")
    eeg_only = AlignedTrial(
        grid=trial.grid, eeg=trial.eeg, channel_names=trial.channel_names
    )
    with pytest.raises(MissingModality):
        correlate_trial(eeg_only, target="audio")


def test_correlate_trial_parameter_errors():
    trial = _bucket_constant_trial()
    with pytest.raises(BadParameter):
        correlate_trial(trial, target="pupil")
    with pytest.raises(BadParameter):
        correlate_trial(trial, method="cosine")


def test_correlate_trial_uses_cleaned_eeg(workspace, basenames):
    basename = basenames[0]
    trial = workspace.aligned(basename)
    raw = correlate_trial(trial, target="audio")
    cleaned = correlate_trial(trial, denoised=workspace.denoised(basename), target="audio")
    assert raw.per_channel.keys() == cleaned.per_channel.keys()
    assert any(
        raw.per_channel[name].mean != cleaned.per_channel[name].mean
        for name in raw.per_channel
    )


# --- event positions -----------------------------------------------------

def test_event_positions_reads_gaze_at_onsets():
    n = 257
    grid = np.arange(n) / 256.0
    trial = AlignedTrial(
        grid=grid,
        eeg=np.zeros((1, n)),
        channel_names=["RAW_A"],
        gaze_x=1000.0 * grid,
        gaze_y=np.full(n, 200.0),
        gaze_events=[(0.25, "fixation"), (0.5, "saccade"), (0.75, "fixation")],
    )
    fixations = event_positions(trial, "fixation")
    assert fixations == [(250.0, 200.0), (750.0, 200.0)]
    assert event_positions(trial, "saccade") == [(500.0, 200.0)]
    assert event_positions(trial, "blink") == []


def test_event_positions_no_gaze():
    trial = AlignedTrial(
        grid=np.arange(3) / 256.0, eeg=np.zeros((1, 3)), channel_names=["RAW_A"]
    )
    assert event_positions(trial, "fixation") == []
