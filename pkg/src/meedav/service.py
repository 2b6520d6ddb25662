"""HTTP facade over a trial workspace.

All endpoints are read-only and deterministic for an unchanged dataset.
Handlers are plain (non-async) functions so FastAPI runs them on the
threadpool: a long ICA run never blocks unrelated requests. Error bodies
are always {"error": code, "detail": text}.
"""

from __future__ import annotations

import os
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

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
from .errors import (
    BackendUnavailable,
    BadParameter,
    MeedavError,
    MissingModality,
    NetworkError,
    NoSuchEvents,
    NotFound,
    RateLimited,
    UnknownTrial,
    WindowTooSmall,
)
from .ingest.records import EVENT_FIXATION, EVENT_SACCADE
from .validation import check_positive
from .workspace import TrialWorkspace

PORT_ENV = "MEEDAV_PORT"
DEFAULT_PORT = 8000

_STATUS = (
    (UnknownTrial, 404),
    (NotFound, 404),
    (NoSuchEvents, 409),
    (MissingModality, 409),
    (BadParameter, 422),
    (WindowTooSmall, 422),
    (RateLimited, 502),
    (NetworkError, 502),
    (BackendUnavailable, 502),
)


def _error_response(exc: MeedavError) -> JSONResponse:
    status = 500
    for cls, code in _STATUS:
        if isinstance(exc, cls):
            status = code
            break
    # CamelCase class name -> snake_case error code
    name = type(exc).__name__
    code_string = "".join(
        "_" + c.lower() if c.isupper() and i else c.lower() for i, c in enumerate(name)
    )
    return JSONResponse(
        status_code=status, content={"error": code_string, "detail": str(exc)}
    )


def _key_fields(trial: AlignedTrial) -> Optional[dict]:
    if trial.key is None:
        return None
    return {
        "participant": trial.key.participant,
        "stimulus": trial.key.stimulus,
        "order": trial.key.order,
        "task": trial.key.task,
    }


def _intensity_payload(trial: AlignedTrial, window_s: float) -> dict:
    series = gaze_intensity(trial.gaze_x, trial.gaze_y, trial.grid, window_s=window_s)
    return {
        "window_s": series.window_s,
        "peak_motion_px": series.peak_motion,
        # vertical carries a negative sign so clients can draw the
        # signed-bar split directly
        "windows": [
            {
                "start_s": w.start_s,
                "horizontal": w.horizontal,
                "vertical": -w.vertical,
                "total": w.total,
            }
            for w in series.windows
        ],
    }


def create_app(workspace: Optional[TrialWorkspace] = None) -> FastAPI:
    """Build the API app around a workspace (default: from MEEDAV_BACKEND)."""
    app = FastAPI(title="meedav", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    state = {"workspace": workspace}

    def ws() -> TrialWorkspace:
        if state["workspace"] is None:
            state["workspace"] = TrialWorkspace.from_env()
        return state["workspace"]

    @app.exception_handler(MeedavError)
    def handle_domain_error(request: Request, exc: MeedavError):
        return _error_response(exc)

    @app.exception_handler(RequestValidationError)
    def handle_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"error": "bad_parameter", "detail": str(exc)}
        )

    @app.get("/api/trials")
    def list_trials(participant: Optional[str] = None, stimulus: Optional[str] = None):
        summaries = []
        for rs in ws().trials():
            if participant is not None and rs.key.participant != participant:
                continue
            if stimulus is not None and rs.key.stimulus != stimulus:
                continue
            trial = ws().aligned(rs.key.basename)
            summaries.append(
                {
                    "basename": rs.key.basename,
                    "key": _key_fields(trial),
                    "modalities": rs.modalities,
                    "duration_s": trial.duration_s,
                    "n_samples": trial.n_samples,
                }
            )
        return summaries

    @app.get("/api/trials/{basename}/timeline")
    def timeline(
        basename: str,
        clean: bool = False,
        intensity_window_s: float = DEFAULT_INTENSITY_WINDOW_S,
        downsample: int = 1,
    ):
        if downsample < 1:
            raise BadParameter(f"downsample must be >= 1, got {downsample}")
        check_positive(intensity_window_s, "intensity_window_s")
        trial = ws().aligned(basename)
        k = downsample
        grid = trial.grid[::k]
        validity = trial.validity or {}

        payload = {
            "basename": basename,
            "key": _key_fields(trial),
            "grid": {"start": 0.0, "step": k / GRID_RATE_HZ, "length": int(grid.size)},
            "downsample": k,
            "eeg": [
                {
                    "name": name,
                    "values": row[::k].tolist(),
                    "valid": bool(validity.get(name, True)),
                }
                for name, row in zip(trial.channel_names, trial.eeg)
            ],
            "cleaned": None,
            "rejected_components": None,
            "ica_converged": None,
            "envelope": None,
            "intensity": None,
            "events": [{"time_s": t, "kind": kind} for t, kind in trial.gaze_events],
        }

        if clean:
            result = ws().denoised(basename)
            payload["cleaned"] = [
                {"name": name, "values": row[::k].tolist()}
                for name, row in zip(trial.channel_names, result.cleaned)
            ]
            payload["rejected_components"] = sorted(result.rejected)
            payload["ica_converged"] = result.converged
        if trial.has_audio:
            times, env = audio_envelope(trial.audio, GRID_RATE_HZ, CORR_STEP_S)
            payload["envelope"] = np.interp(grid, times, env).tolist()
        if trial.has_gaze:
            payload["intensity"] = _intensity_payload(trial, intensity_window_s)
        return payload

    @app.get("/api/trials/{basename}/heatmap")
    def heatmap(basename: str, event: str = EVENT_FIXATION):
        if event not in (EVENT_FIXATION, EVENT_SACCADE):
            raise BadParameter(f"event must be fixation or saccade, got {event!r}")
        trial = ws().aligned(basename)
        points = event_positions(trial, event)
        if not points:
            raise NoSuchEvents(f"{basename} has no {event} events")
        grid = kde_heatmap(points, event)
        return {
            "event_kind": grid.event_kind,
            "extent": list(grid.extent),
            "bandwidth": list(grid.bandwidth),
            "n_points": len(points),
            "density": grid.density.tolist(),
        }

    @app.get("/api/trials/{basename}/correlation")
    def correlation(
        basename: str,
        method: str = "pearson",
        target: str = "audio",
        window_s: float = DEFAULT_CORR_WINDOW_S,
        stride_s: float = DEFAULT_CORR_STRIDE_S,
        clean: bool = False,
    ):
        trial = ws().aligned(basename)
        denoised = ws().denoised(basename) if clean else None
        report = correlate_trial(
            trial,
            denoised,
            method=method,
            target=target,
            window_s=window_s,
            stride_s=stride_s,
        )
        return {
            "method": report.method,
            "target": report.target,
            "window_s": report.window_s,
            "stride_s": report.stride_s,
            "clean": clean,
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

    @app.get("/api/participants/{participant}/dashboard")
    def dashboard(participant: str):
        sets = [rs for rs in ws().trials() if rs.key.participant == participant]
        if not sets:
            raise NotFound(f"no trials for participant {participant!r}")
        trials = [ws().aligned(rs.key.basename) for rs in sets]

        validity_counts: dict[str, list[int]] = {}
        for trial in trials:
            flags = trial.validity or {}
            for name in trial.channel_names:
                seen, valid = validity_counts.setdefault(name, [0, 0])
                validity_counts[name][0] = seen + 1
                validity_counts[name][1] = valid + int(flags.get(name, True))

        peaks = [
            gaze_intensity(t.gaze_x, t.gaze_y, t.grid).peak_motion
            for t in trials
            if t.has_gaze
        ]
        return {
            "participant": participant,
            "trial_count": len(sets),
            "basenames": [rs.key.basename for rs in sets],
            "mean_duration_s": float(np.mean([t.duration_s for t in trials])),
            "channel_validity_rate": {
                name: valid / seen for name, (seen, valid) in sorted(validity_counts.items())
            },
            "mean_intensity_peak": float(np.mean(peaks)) if peaks else None,
        }

    return app


def default_port(environ=None) -> int:
    env = os.environ if environ is None else environ
    raw = env.get(PORT_ENV, "")
    try:
        return int(raw) if raw else DEFAULT_PORT
    except ValueError:
        raise BadParameter(f"{PORT_ENV} must be an integer, got {raw!r}") from None


def run(workspace: Optional[TrialWorkspace] = None, host: str = "127.0.0.1", port: Optional[int] = None):
    """Serve the app with uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(create_app(workspace), host=host, port=port or default_port())
