"""Command-line frontend: list, export, analyze, synth, serve.

Every command is a thin shell over library calls; this module owns only
argument parsing, file serialization, and the exit-code map:

    0 success, 2 backend failure, 3 unknown trial, 4 write failure,
    5 missing modality / no matching events.

Exports use the ingest column conventions, so an export directory can be
re-discovered and re-aligned; derived artifacts (envelope, metadata,
cleaned EEG) carry a leading underscore, which discovery skips.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import service
from .align import GRID_RATE_HZ, AlignedTrial
from .analytics import (
    CORR_STEP_S,
    DEFAULT_CORR_STRIDE_S,
    DEFAULT_CORR_WINDOW_S,
    DEFAULT_INTENSITY_WINDOW_S,
    audio_envelope,
    correlate_trial,
    event_positions,
    gaze_intensity,
    kde_heatmap,
)
from .denoise import DenoiseResult
from .errors import (
    BackendUnavailable,
    MissingModality,
    NetworkError,
    NoSuchEvents,
    RateLimited,
    UnknownTrial,
)
from .ingest.records import EVENT_FIXATION, EVENT_SACCADE
from .synth import generate_dataset
from .workspace import TrialWorkspace

EXIT_OK = 0
EXIT_BACKEND = 2
EXIT_UNKNOWN_TRIAL = 3
EXIT_WRITE = 4
EXIT_MISSING = 5


# --- serialization -------------------------------------------------------

def _fmt(value: float) -> str:
    # repr round-trips doubles exactly; the byte-determinism of exports
    # rests on it
    return repr(float(value))


def _timestamps_ms(trial: AlignedTrial) -> np.ndarray:
    # grid times are dyadic (i / 256), so * 1000 is exact and dividing by
    # 1000 on re-ingest restores the grid bit-for-bit
    return trial.grid * 1000.0


def _event_labels_on_grid(trial: AlignedTrial) -> list[str]:
    """Onset labels snapped to the first grid row at or after the onset."""
    labels = [""] * trial.n_samples
    for t, kind in trial.gaze_events:
        idx = int(np.searchsorted(trial.grid, t - 1e-9, side="left"))
        if idx < trial.n_samples:
            labels[idx] = kind
    return labels


def _channel_csv(trial: AlignedTrial, matrix: np.ndarray) -> bytes:
    lines = ["TimeStamp," + ",".join(trial.channel_names)]
    ts = _timestamps_ms(trial)
    for i in range(trial.n_samples):
        lines.append(_fmt(ts[i]) + "," + ",".join(_fmt(v) for v in matrix[:, i]))
    return ("\n".join(lines) + "\n").encode()


def _gaze_csv(trial: AlignedTrial) -> bytes:
    lines = ["TimeStamp,X,Y,Event"]
    ts = _timestamps_ms(trial)
    labels = _event_labels_on_grid(trial)
    for i in range(trial.n_samples):
        lines.append(
            f"{_fmt(ts[i])},{_fmt(trial.gaze_x[i])},{_fmt(trial.gaze_y[i])},{labels[i]}"
        )
    return ("\n".join(lines) + "\n").encode()


def _envelope_series(trial: AlignedTrial) -> tuple[np.ndarray, np.ndarray]:
    return audio_envelope(trial.audio, GRID_RATE_HZ, CORR_STEP_S)


def _json_bytes(doc) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()


def _metadata(trial: AlignedTrial, result: Optional[DenoiseResult], fmt: str) -> dict:
    meta = {
        "basename": trial.key.basename if trial.key else None,
        "participant": trial.key.participant if trial.key else None,
        "stimulus": trial.key.stimulus if trial.key else None,
        "order": trial.key.order if trial.key else None,
        "task": trial.key.task if trial.key else None,
        "modalities": ["eeg"]
        + (["gaze"] if trial.has_gaze else [])
        + (["audio"] if trial.has_audio else []),
        "duration_s": trial.duration_s,
        "n_samples": trial.n_samples,
        "grid_rate_hz": GRID_RATE_HZ,
        "channels": list(trial.channel_names),
        "validity": trial.validity,
        "format": fmt,
        "clean": result is not None,
    }
    if result is not None:
        meta["rejected_components"] = sorted(result.rejected)
        meta["ica_converged"] = result.converged
        meta["ica_iterations"] = result.iterations
    return meta


def export_trial(
    trial: AlignedTrial,
    result: Optional[DenoiseResult] = None,
    out_dir=".",
    fmt: str = "csv",
) -> list[Path]:
    """Write one file per modality plus metadata; returns the paths.

    csv format re-uses the ingest layout for EEG (``.eeg``) and gaze
    (``.et``); audio is reduced to its 10 ms RMS envelope. Outputs are
    byte-deterministic for a fixed trial and seed.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    basename = trial.key.basename if trial.key else "trial"
    written = []

    def emit(name: str, payload: bytes) -> None:
        path = out / name
        path.write_bytes(payload)
        written.append(path)

    if fmt == "csv":
        emit(f"{basename}.eeg", _channel_csv(trial, trial.eeg))
        if trial.has_gaze:
            emit(f"{basename}.et", _gaze_csv(trial))
        if trial.has_audio:
            times, env = _envelope_series(trial)
            rows = "\n".join(f"{_fmt(t)},{_fmt(v)}" for t, v in zip(times, env))
            emit(f"_{basename}.envelope.csv", f"time_s,envelope\n{rows}\n".encode())
        if result is not None:
            emit(f"_{basename}.cleaned.csv", _channel_csv(trial, result.cleaned))
    elif fmt == "json":
        ts = _timestamps_ms(trial).tolist()
        emit(
            f"{basename}.eeg.json",
            _json_bytes(
                {
                    "timestamps_ms": ts,
                    "channels": [
                        {"name": name, "values": row.tolist()}
                        for name, row in zip(trial.channel_names, trial.eeg)
                    ],
                }
            ),
        )
        if trial.has_gaze:
            emit(
                f"{basename}.gaze.json",
                _json_bytes(
                    {
                        "timestamps_ms": ts,
                        "x": trial.gaze_x.tolist(),
                        "y": trial.gaze_y.tolist(),
                        "events": [
                            {"time_s": t, "kind": kind} for t, kind in trial.gaze_events
                        ],
                    }
                ),
            )
        if trial.has_audio:
            times, env = _envelope_series(trial)
            emit(
                f"{basename}.envelope.json",
                _json_bytes(
                    {
                        "frame_s": CORR_STEP_S,
                        "times_s": times.tolist(),
                        "values": env.tolist(),
                    }
                ),
            )
        if result is not None:
            emit(
                f"{basename}.cleaned.json",
                _json_bytes(
                    {
                        "timestamps_ms": ts,
                        "channels": [
                            {"name": name, "values": row.tolist()}
                            for name, row in zip(trial.channel_names, result.cleaned)
                        ],
                    }
                ),
            )
    else:
        raise ValueError(f"unknown export format {fmt!r}")

    emit(f"_{basename}.meta.json", _json_bytes(_metadata(trial, result, fmt)))
    return written


# --- commands ------------------------------------------------------------

def _cmd_list(args) -> int:
    ws = TrialWorkspace.from_env()
    print(f"{'BASENAME':<28} {'MODALITIES':<16} {'DURATION_S':>10}")
    for rs in ws.trials():
        if args.participant and rs.key.participant != args.participant:
            continue
        if args.stimulus and rs.key.stimulus != args.stimulus:
            continue
        trial = ws.aligned(rs.key.basename)
        print(
            f"{rs.key.basename:<28} {','.join(rs.modalities):<16} "
            f"{trial.duration_s:>10.3f}"
        )
    return EXIT_OK


def _cmd_export(args) -> int:
    ws = TrialWorkspace.from_env()
    trial = ws.aligned(args.basename)
    result = ws.denoised(args.basename) if args.clean else None
    written = export_trial(trial, result, out_dir=args.out, fmt=args.format)
    for path in written:
        print(path)
    return EXIT_OK


def _analyze_intensity(args, trial: AlignedTrial, out: Path) -> list[Path]:
    if not trial.has_gaze:
        raise MissingModality(f"{args.basename} has no gaze modality")
    series = gaze_intensity(trial.gaze_x, trial.gaze_y, trial.grid, window_s=args.window_s)
    rows = "\n".join(
        f"{_fmt(w.start_s)},{_fmt(w.horizontal)},{_fmt(w.vertical)},{_fmt(w.total)}"
        for w in series.windows
    )
    path = out / f"{args.basename}.intensity.csv"
    path.write_bytes(f"start_s,horizontal,vertical,total\n{rows}\n".encode())
    return [path]


def _analyze_heatmap(args, trial: AlignedTrial, out: Path) -> list[Path]:
    points = event_positions(trial, args.event)
    if not points:
        raise NoSuchEvents(f"{args.basename} has no {args.event} events")
    grid = kde_heatmap(points, args.event)
    meta_path = out / f"{args.basename}.heatmap_{args.event}.json"
    meta_path.write_bytes(
        _json_bytes(
            {
                "event_kind": grid.event_kind,
                "extent": list(grid.extent),
                "bandwidth": list(grid.bandwidth),
                "n_points": len(points),
            }
        )
    )
    grid_path = out / f"{args.basename}.heatmap_{args.event}.csv"
    grid_path.write_bytes(
        ("\n".join(",".join(_fmt(v) for v in row) for row in grid.density) + "\n").encode()
    )
    return [meta_path, grid_path]


def _analyze_correlation(args, trial: AlignedTrial, ws: TrialWorkspace, out: Path) -> list[Path]:
    denoised = ws.denoised(args.basename) if args.clean else None
    report = correlate_trial(
        trial,
        denoised,
        method=args.method,
        target=args.target,
        window_s=args.corr_window_s,
        stride_s=args.stride_s,
    )
    table_path = out / f"{args.basename}.correlation.csv"
    lines = ["channel,mean,defined_windows,total_windows"]
    for name, series in report.per_channel.items():
        defined = sum(1 for _, r in series.windows if r is not None)
        mean = "" if series.mean is None else _fmt(series.mean)
        lines.append(f"{name},{mean},{defined},{len(series.windows)}")
    table_path.write_bytes(("\n".join(lines) + "\n").encode())

    json_path = out / f"{args.basename}.correlation.json"
    json_path.write_bytes(
        _json_bytes(
            {
                "method": report.method,
                "target": report.target,
                "window_s": report.window_s,
                "stride_s": report.stride_s,
                "clean": args.clean,
                "per_channel": {
                    name: {
                        "mean": series.mean,
                        "windows": [
                            {"start_s": start, "coefficient": r}
                            for start, r in series.windows
                        ],
                    }
                    for name, series in report.per_channel.items()
                },
            }
        )
    )
    return [table_path, json_path]


def _cmd_analyze(args) -> int:
    ws = TrialWorkspace.from_env()
    trial = ws.aligned(args.basename)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.feature == "intensity":
        written = _analyze_intensity(args, trial, out)
    elif args.feature == "heatmap":
        written = _analyze_heatmap(args, trial, out)
    else:
        written = _analyze_correlation(args, trial, ws, out)
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_synth(args) -> int:
    basenames = generate_dataset(args.out, seed=args.seed, n_trials=args.trials)
    print(f"wrote {len(basenames)} trial(s) to {args.out}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    ws = TrialWorkspace.from_env()
    service.run(ws, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meedav",
        description="Synchronized EEG / eye-tracking / audio trial tooling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list trials in the configured backend")
    p.add_argument("--participant", help="keep only this participant (e.g. P03)")
    p.add_argument("--stimulus", help="keep only this stimulus (e.g. S084)")
    p.set_defaults(func=_cmd_list)

    p = sub.add_parser("export", help="write aligned (and cleaned) data to files")
    p.add_argument("basename")
    p.add_argument("--clean", action="store_true", help="also run ICA and export cleaned EEG")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("analyze", help="compute one analytics feature to files")
    p.add_argument("basename")
    p.add_argument("--feature", required=True, choices=("intensity", "heatmap", "correlation"))
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--window-s", type=float, default=DEFAULT_INTENSITY_WINDOW_S,
                   help="intensity window length in seconds")
    p.add_argument("--event", choices=(EVENT_FIXATION, EVENT_SACCADE), default=EVENT_FIXATION,
                   help="event kind for --feature heatmap")
    p.add_argument("--method", choices=("pearson", "spearman", "kendall"), default="pearson")
    p.add_argument("--target", choices=("audio", "gaze_intensity"), default="audio")
    p.add_argument("--corr-window-s", type=float, default=DEFAULT_CORR_WINDOW_S)
    p.add_argument("--stride-s", type=float, default=DEFAULT_CORR_STRIDE_S)
    p.add_argument("--clean", action="store_true", help="correlate against cleaned EEG")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("synth", help="generate a synthetic dataset with ground truth")
    p.add_argument("--out", required=True, help="dataset directory to create")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=3)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help=f"default: ${service.PORT_ENV} or {service.DEFAULT_PORT}")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BackendUnavailable, NetworkError, RateLimited) as exc:
        print(f"meedav: backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except UnknownTrial as exc:
        print(f"meedav: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_TRIAL
    except (MissingModality, NoSuchEvents) as exc:
        print(f"meedav: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except OSError as exc:
        print(f"meedav: write failed: {exc}", file=sys.stderr)
        return EXIT_WRITE


if __name__ == "__main__":
    sys.exit(main())
