"""Backend-to-trial plumbing shared by the service and the CLI.

A TrialWorkspace owns one storage backend plus in-memory caches of
discovery results, aligned trials, and denoise runs. Caches are unbounded
by design: datasets are desk scale and repeated UI interactions must not
re-read or recompute anything.
"""

from __future__ import annotations

import threading
from typing import Optional

from .align import AlignedTrial, align_trial
from .analytics import channel_validity
from .denoise import ArtifactCriteria, DEFAULT_MAX_ITER, DEFAULT_SEED, DEFAULT_TOL, DenoiseResult, denoise_eeg
from .errors import UnknownTrial
from .ingest import (
    DatasetManifest,
    StorageBackend,
    TrialRecordSet,
    backend_from_env,
    discover_trials,
    load_audio,
    load_eeg,
    load_gaze,
    load_manifest,
)


class TrialWorkspace:
    """Lazy, memoizing view of one dataset.

    Computation happens outside the lock: concurrent first requests for
    the same trial may compute twice, but results are deterministic so
    whichever insertion wins is equivalent. Long ICA runs therefore never
    block unrelated lookups.
    """

    def __init__(self, backend: StorageBackend, manifest: Optional[DatasetManifest] = None):
        self.backend = backend
        self._manifest = manifest
        self._lock = threading.Lock()
        self._trials: Optional[list[TrialRecordSet]] = None
        self._aligned: dict[str, AlignedTrial] = {}
        self._denoised: dict[tuple, DenoiseResult] = {}

    @classmethod
    def from_env(cls, environ=None) -> "TrialWorkspace":
        return cls(backend_from_env(environ))

    @property
    def manifest(self) -> DatasetManifest:
        if self._manifest is None:
            self._manifest = load_manifest(self.backend)
        return self._manifest

    def trials(self) -> list[TrialRecordSet]:
        with self._lock:
            if self._trials is not None:
                return self._trials
        found = discover_trials(self.backend, self.manifest)
        with self._lock:
            if self._trials is None:
                self._trials = found
            return self._trials

    def record_set(self, basename: str) -> TrialRecordSet:
        for rs in self.trials():
            if rs.key.basename == basename:
                return rs
        raise UnknownTrial(f"no trial named {basename!r}")

    def participants(self) -> list[str]:
        return sorted({rs.key.participant for rs in self.trials()})

    def aligned(self, basename: str) -> AlignedTrial:
        with self._lock:
            cached = self._aligned.get(basename)
        if cached is not None:
            return cached
        trial = self._load(self.record_set(basename))
        with self._lock:
            return self._aligned.setdefault(basename, trial)

    def denoised(
        self,
        basename: str,
        criteria: ArtifactCriteria = ArtifactCriteria(),
        max_iter: int = DEFAULT_MAX_ITER,
        tol: float = DEFAULT_TOL,
        seed: int = DEFAULT_SEED,
    ) -> DenoiseResult:
        key = (
            basename,
            criteria.kurtosis_sigma_factor,
            criteria.p2p_percentile,
            max_iter,
            tol,
            seed,
        )
        with self._lock:
            cached = self._denoised.get(key)
        if cached is not None:
            return cached
        trial = self.aligned(basename)
        result = denoise_eeg(trial.eeg, criteria=criteria, max_iter=max_iter, tol=tol, seed=seed)
        with self._lock:
            return self._denoised.setdefault(key, result)

    def _load(self, rs: TrialRecordSet) -> AlignedTrial:
        unit = self.manifest.timestamp_unit
        eeg = load_eeg(self.backend.read(rs.eeg_path), native_unit=unit)
        gaze = load_gaze(self.backend.read(rs.gaze_path), native_unit=unit) if rs.gaze_path else None
        audio = load_audio(self.backend.read(rs.audio_path)) if rs.audio_path else None
        trial = align_trial(eeg, gaze=gaze, audio=audio, key=rs.key)
        checks = channel_validity(trial.eeg)
        return trial.with_validity(
            {name: check.valid for name, check in zip(trial.channel_names, checks)}
        )
