"""Deterministic synthetic dataset with recorded ground truth.

A desk-scale stand-in for a real multimodal recording session: per trial
a 4-channel EEG file (sinusoidal brain-like sources plus an injected
ocular-like spike source, mixed with a known matrix), a scripted gaze
scan-path with labeled fixations and saccades, and tone-burst audio.
Everything derives from one seed and re-runs byte-identically; the
``_ground_truth.json`` sidecar records enough to rebuild every source
signal exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .align import GRID_RATE_HZ, SCREEN_HEIGHT_PX, SCREEN_WIDTH_PX
from .ingest.audio import write_wav
from .ingest.manifest import MANIFEST_FILENAME

GROUND_TRUTH_FILENAME = "_ground_truth.json"
EEG_CHANNELS = ("RAW_TP9", "RAW_AF7", "RAW_AF8", "RAW_TP10")
GAZE_RATE_HZ = 250.0
AUDIO_RATE_HZ = 16000
EEG_SCALE_UV = 40.0
SPIKE_WIDTH_S = 0.2

_TASKS = ("Read", "Listen", "Translate")


def build_source(descriptor: dict, duration_s: float, rate_hz: float) -> np.ndarray:
    """Realize one standardized source signal from its sidecar descriptor."""
    n = int(round(duration_s * rate_hz)) + 1
    t = np.arange(n) / rate_hz
    kind = descriptor["kind"]
    if kind == "sine":
        s = np.sin(2.0 * np.pi * descriptor["freq_hz"] * t + descriptor["phase"])
    elif kind == "spikes":
        s = np.zeros(n)
        width = descriptor["width_s"]
        for ts in descriptor["times_s"]:
            inside = np.abs(t - ts) < width / 2.0
            s[inside] += np.cos(np.pi * (t[inside] - ts) / width) ** 2
    elif kind == "laplace":
        s = np.random.default_rng(descriptor["seed"]).laplace(size=n)
    else:
        raise ValueError(f"unknown source kind {kind!r}")
    return (s - s.mean()) / s.std()


def build_sources(descriptors: list[dict], duration_s: float, rate_hz: float) -> np.ndarray:
    return np.vstack([build_source(d, duration_s, rate_hz) for d in descriptors])


def _well_conditioned_mixing(rng: np.random.Generator, n: int) -> np.ndarray:
    # rejection keeps the fixture far from rank deficiency so whitening
    # and unmixing stay numerically tame
    while True:
        A = rng.uniform(0.3, 1.0, (n, n)) + 0.6 * np.eye(n)
        if np.linalg.cond(A) < 15.0:
            return A


def _format_row(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def _eeg_file(truth: dict) -> bytes:
    X = trial_eeg_matrix(truth)
    n = X.shape[1]
    step_ms = 1000.0 / GRID_RATE_HZ  # 3.90625, exactly representable
    lines = ["TimeStamp," + ",".join(EEG_CHANNELS)]
    for i in range(n):
        lines.append(repr(i * step_ms) + "," + _format_row(X[:, i]))
    return ("\n".join(lines) + "\n").encode()


def trial_eeg_matrix(truth: dict) -> np.ndarray:
    """The exact microvolt matrix written to a trial's EEG file."""
    S = build_sources(truth["sources"], truth["duration_s"], GRID_RATE_HZ)
    A = np.array(truth["mixing"])
    offsets = np.array(truth["offsets"])
    return EEG_SCALE_UV * (A @ S) + offsets[:, None]


def _gaze_segments(rng: np.random.Generator, duration_s: float) -> list[dict]:
    points = np.column_stack(
        [
            rng.uniform(120.0, SCREEN_WIDTH_PX - 120.0, 4),
            rng.uniform(120.0, SCREEN_HEIGHT_PX - 120.0, 4),
        ]
    )
    saccade_s = 0.08
    fix_total = duration_s - 3 * saccade_s
    weights = rng.uniform(0.8, 1.2, 4)
    fix_lengths = fix_total * weights / weights.sum()
    segments = []
    for i in range(4):
        segments.append(
            {"kind": "fixation", "length_s": float(fix_lengths[i]), "to": points[i].tolist()}
        )
        if i < 3:
            segments.append(
                {"kind": "saccade", "length_s": saccade_s, "to": points[i + 1].tolist()}
            )
    return segments


def _gaze_file(truth: dict) -> bytes:
    duration = truth["duration_s"]
    n = int(round(duration * GAZE_RATE_HZ)) + 1
    step_ms = 1000.0 / GAZE_RATE_HZ  # 4.0 exactly
    lines = ["TimeStamp,X,Y,Event"]

    # walk the scripted segments; labels use the tracker's own casing
    segments = truth["gaze_segments"]
    label = {"fixation": "Fixation", "saccade": "Saccade"}
    boundaries = np.cumsum([seg["length_s"] for seg in segments])
    position = np.array(segments[0]["to"])
    for i in range(n):
        t = i / GAZE_RATE_HZ
        seg_idx = int(np.searchsorted(boundaries, t, side="right"))
        seg_idx = min(seg_idx, len(segments) - 1)
        seg = segments[seg_idx]
        seg_start = boundaries[seg_idx] - seg["length_s"]
        target = np.array(seg["to"])
        if seg["kind"] == "fixation":
            position = target
        else:
            origin = np.array(segments[seg_idx - 1]["to"])
            frac = min(max((t - seg_start) / seg["length_s"], 0.0), 1.0)
            position = origin + frac * (target - origin)
        lines.append(
            f"{repr(i * step_ms)},{repr(float(position[0]))},"
            f"{repr(float(position[1]))},{label[seg['kind']]}"
        )
    return ("\n".join(lines) + "\n").encode()


def trial_audio_samples(truth: dict) -> np.ndarray:
    n = int(round(truth["duration_s"] * AUDIO_RATE_HZ))
    t = np.arange(n) / AUDIO_RATE_HZ
    samples = np.zeros(n)
    for burst in truth["audio_bursts"]:
        inside = (t >= burst["start_s"]) & (t < burst["end_s"])
        samples[inside] = 0.8 * np.sin(2.0 * np.pi * burst["freq_hz"] * t[inside])
    return samples


def _trial_truth(rng: np.random.Generator, index: int, participant_order: int) -> dict:
    participant = f"P{index % 2 + 1:02d}"
    duration = 4.0 + 0.25 * index
    spike_times = np.sort(rng.uniform(0.5, duration - 0.5, 3))
    sources = [
        {"kind": "sine", "freq_hz": round(float(rng.uniform(8.0, 11.0)), 3), "phase": round(float(rng.uniform(0, 2 * np.pi)), 3)},
        {"kind": "sine", "freq_hz": round(float(rng.uniform(5.0, 7.0)), 3), "phase": round(float(rng.uniform(0, 2 * np.pi)), 3)},
        {"kind": "sine", "freq_hz": round(float(rng.uniform(18.0, 24.0)), 3), "phase": round(float(rng.uniform(0, 2 * np.pi)), 3)},
        {"kind": "spikes", "times_s": [round(float(ts), 3) for ts in spike_times], "width_s": SPIKE_WIDTH_S},
    ]
    burst_low = round(float(rng.uniform(300.0, 500.0)), 1)
    burst_high = round(float(rng.uniform(600.0, 900.0)), 1)
    return {
        "basename": f"{participant}_S{index + 1:03d}_{participant_order:02d}_{_TASKS[index % len(_TASKS)]}",
        "participant": participant,
        "duration_s": duration,
        "sources": sources,
        "spike_source_index": 3,
        "mixing": np.round(_well_conditioned_mixing(rng, 4), 6).tolist(),
        "offsets": [820.0, 800.0, 790.0, 830.0],
        "scale_uv": EEG_SCALE_UV,
        "gaze_segments": _gaze_segments(rng, duration),
        "audio_bursts": [
            {"freq_hz": burst_low, "start_s": 0.5, "end_s": 1.5},
            {"freq_hz": burst_high, "start_s": round(duration - 2.0, 3), "end_s": round(duration - 1.0, 3)},
        ],
    }


def generate_dataset(out_dir, seed: int = 42, n_trials: int = 3) -> list[str]:
    """Write a complete synthetic dataset; returns the trial basenames.

    Output: ``meedav.manifest``, one ``.eeg``/``.et``/``.wav`` triple per
    trial, and ``_ground_truth.json``. Fixed (seed, n_trials) re-runs are
    byte-identical.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    trials = []
    per_participant: dict[str, int] = {}
    for index in range(n_trials):
        participant = f"P{index % 2 + 1:02d}"
        order = per_participant.get(participant, 0) + 1
        per_participant[participant] = order
        trials.append(_trial_truth(rng, index, order))

    (out / MANIFEST_FILENAME).write_bytes(
        b"timestamp_unit = ms\neeg_suffix = .eeg\ngaze_suffix = .et\naudio_suffix = .wav\n"
    )

    for truth in trials:
        basename = truth["basename"]
        (out / f"{basename}.eeg").write_bytes(_eeg_file(truth))
        (out / f"{basename}.et").write_bytes(_gaze_file(truth))
        write_wav(out / f"{basename}.wav", trial_audio_samples(truth), AUDIO_RATE_HZ)

    truth_doc = {
        "seed": seed,
        "n_trials": n_trials,
        "grid_rate_hz": GRID_RATE_HZ,
        "gaze_rate_hz": GAZE_RATE_HZ,
        "audio_rate_hz": AUDIO_RATE_HZ,
        "channels": list(EEG_CHANNELS),
        "trials": trials,
        "ica_check": {
            "duration_s": 8.0,
            "rate_hz": GRID_RATE_HZ,
            "mixing": [[1.0, 0.6], [0.4, 1.0]],
            "sources": [
                {"kind": "sine", "freq_hz": 8.0, "phase": 0.0},
                {"kind": "laplace", "seed": seed + 101},
            ],
        },
    }
    (out / GROUND_TRUTH_FILENAME).write_text(
        json.dumps(truth_doc, indent=2, sort_keys=True) + "\n"
    )
    return [truth["basename"] for truth in trials]
