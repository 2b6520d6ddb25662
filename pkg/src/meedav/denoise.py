"""FastICA-based EEG artifact suppression.

Pipeline: whiten -> fixed-point ICA with symmetric decorrelation ->
reject artifactual components (kurtosis and peak-to-peak criteria) ->
zero their rows and reconstruct. Everything is deterministic for a fixed
seed; non-convergence is reported via a flag, never raised.

Channels are rows (C x T) in the functional API. The sklearn-style
``FastIcaDenoiser`` estimator takes samples-by-channels input (T x C)
like the rest of that ecosystem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import (
    BadParameter,
    DegenerateChannel,
    DegenerateComponent,
    InsufficientData,
)
from .validation import as_float_matrix, as_float_vector, check_positive

DEFAULT_MAX_ITER = 200
DEFAULT_TOL = 1e-4
DEFAULT_SEED = 42


@dataclass(frozen=True)
class ArtifactCriteria:
    """Thresholds for component rejection.

    ``kurtosis_sigma_factor`` scales the spread of excess-kurtosis values
    across a trial's components; ``p2p_percentile`` sets the amplitude
    cutoff within the trial. Percentile 100 disables the amplitude rule:
    the interpolated percentile sits below the maximum for any smaller
    value, so some component would always exceed it.
    """

    kurtosis_sigma_factor: float = 3.0
    p2p_percentile: float = 95.0

    def __post_init__(self):
        check_positive(self.kurtosis_sigma_factor, "kurtosis_sigma_factor")
        if not 0.0 < self.p2p_percentile <= 100.0:
            raise BadParameter(
                f"p2p_percentile must be in (0, 100], got {self.p2p_percentile}"
            )


@dataclass(frozen=True)
class DenoiseResult:
    """ICA decomposition plus the cleaned signal.

    ``mixing @ sources_with_rejected_rows_zeroed + channel_means`` equals
    ``cleaned``; with nothing rejected this reproduces the input.
    """

    mixing: np.ndarray
    unmixing: np.ndarray
    sources: np.ndarray
    rejected: frozenset[int]
    cleaned: np.ndarray
    channel_means: np.ndarray
    iterations: int
    converged: bool


def whiten(X) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Zero-mean, identity-covariance transform of channel data.

    Returns (Xw, transform, mean) with Xw = transform @ (X - mean[:, None]).

    Raises:
        InsufficientData: T <= C.
        DegenerateChannel: a constant channel, or rank-deficient data.
    """
    X = as_float_matrix(X, "X")
    n_channels, n_samples = X.shape
    if n_samples <= n_channels:
        raise InsufficientData(
            f"need more samples than channels, got {n_channels}x{n_samples}"
        )
    flat = np.ptp(X, axis=1) == 0.0
    if np.any(flat):
        raise DegenerateChannel(
            f"zero-variance channel(s) at rows {np.flatnonzero(flat).tolist()}"
        )
    mean = X.mean(axis=1)
    centered = X - mean[:, None]
    cov = centered @ centered.T / n_samples
    eigvals, eigvecs = np.linalg.eigh(cov)
    if eigvals[-1] <= 0 or eigvals[0] <= eigvals[-1] * 1e-12:
        raise DegenerateChannel("channel covariance is rank deficient")
    transform = (eigvecs / np.sqrt(eigvals)).T
    return transform @ centered, transform, mean


def _sym_decorrelate(W: np.ndarray) -> np.ndarray:
    # W <- (W W^T)^(-1/2) W, the whole-matrix orthonormalization step
    eigvals, eigvecs = np.linalg.eigh(W @ W.T)
    inv_sqrt = (eigvecs / np.sqrt(eigvals)) @ eigvecs.T
    return inv_sqrt @ W


def fast_ica(
    Xw,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> tuple[np.ndarray, np.ndarray, bool, int]:
    """Fixed-point ICA on whitened data with tanh contrast.

    All rows of the unmixing matrix are updated in parallel and
    re-orthonormalized each step (symmetric decorrelation); convergence
    is declared when every |diag(W_new @ W_old^T)| reaches 1 - tol.

    Returns (W, S, converged, iterations) with S = W @ Xw and W having
    orthonormal rows. Non-convergence returns the best iterate with
    converged=False.
    """
    Xw = as_float_matrix(Xw, "Xw")
    n_components, n_samples = Xw.shape
    rng = np.random.default_rng(seed)
    W = _sym_decorrelate(rng.standard_normal((n_components, n_components)))

    converged = False
    iteration = 0
    for iteration in range(1, max_iter + 1):
        projected = W @ Xw
        g = np.tanh(projected)
        g_prime_mean = (1.0 - g**2).mean(axis=1)
        W_new = _sym_decorrelate(g @ Xw.T / n_samples - g_prime_mean[:, None] * W)
        drift = np.max(np.abs(np.abs(np.einsum("ij,ij->i", W_new, W)) - 1.0))
        W = W_new
        if drift < tol:
            converged = True
            break
    return W, W @ Xw, converged, iteration


def component_kurtosis(s) -> float:
    """Excess kurtosis of one component (population estimator).

    Raises:
        InsufficientData: fewer than 4 samples.
        DegenerateComponent: zero variance.
    """
    s = as_float_vector(s, "s")
    if s.size < 4:
        raise InsufficientData(f"kurtosis needs >= 4 samples, got {s.size}")
    centered = s - s.mean()
    m2 = np.mean(centered**2)
    if m2 == 0.0:
        raise DegenerateComponent("component has zero variance")
    return float(np.mean(centered**4) / m2**2 - 3.0)


def detect_artifact_components(
    S, criteria: ArtifactCriteria = ArtifactCriteria()
) -> frozenset[int]:
    """Indices of components flagged as artifacts.

    A component is rejected when its excess kurtosis deviates from the
    across-component mean by more than ``factor`` times the across-
    component spread (no rejection when that spread is zero), or when its
    peak-to-peak amplitude exceeds the chosen percentile of the trial's
    p2p values (linear interpolation between order statistics). At least
    one component is always retained.
    """
    S = as_float_matrix(S, "S")
    n_components = S.shape[0]
    if n_components < 2:
        return frozenset()

    kurtoses = np.array(
        [
            0.0 if np.ptp(row) == 0.0 else component_kurtosis(row)
            for row in S
        ]
    )
    p2p = np.ptp(S, axis=1)

    rejected: set[int] = set()
    spread = kurtoses.std()
    if spread > 0.0:
        deviant = np.abs(kurtoses - kurtoses.mean()) > criteria.kurtosis_sigma_factor * spread
        rejected.update(np.flatnonzero(deviant).tolist())
    threshold = np.percentile(p2p, criteria.p2p_percentile)
    rejected.update(np.flatnonzero(p2p > threshold).tolist())

    if len(rejected) == n_components:
        # an all-zero "cleaned" signal is never useful output
        keep = min(rejected, key=lambda i: (p2p[i], i))
        rejected.discard(keep)
    return frozenset(rejected)


def denoise_eeg(
    X,
    criteria: ArtifactCriteria = ArtifactCriteria(),
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> DenoiseResult:
    """Full artifact-suppression pipeline on a C x T microvolt matrix.

    Single-channel input passes through untouched (no decomposition is
    possible). Otherwise: whiten, run ICA, zero rejected source rows,
    reconstruct, and re-add the channel means.
    """
    X = as_float_matrix(X, "X")
    n_channels = X.shape[0]
    if n_channels == 1:
        mean = X.mean(axis=1)
        return DenoiseResult(
            mixing=np.eye(1),
            unmixing=np.eye(1),
            sources=X - mean[:, None],
            rejected=frozenset(),
            cleaned=X.copy(),
            channel_means=mean,
            iterations=0,
            converged=True,
        )

    Xw, transform, mean = whiten(X)
    W, S, converged, iterations = fast_ica(Xw, max_iter=max_iter, tol=tol, seed=seed)
    rejected = detect_artifact_components(S, criteria)

    dewhiten = np.linalg.inv(transform)
    mixing = dewhiten @ W.T  # X_centered = mixing @ S
    unmixing = W @ transform

    S_kept = S.copy()
    if rejected:
        S_kept[sorted(rejected), :] = 0.0
    cleaned = mixing @ S_kept + mean[:, None]

    return DenoiseResult(
        mixing=mixing,
        unmixing=unmixing,
        sources=S,
        rejected=rejected,
        cleaned=cleaned,
        channel_means=mean,
        iterations=iterations,
        converged=converged,
    )


class FastIcaDenoiser(BaseEstimator, TransformerMixin):
    """sklearn-style wrapper: fit learns the decomposition, transform cleans.

    Input follows the estimator convention of samples-by-channels
    (T x C). ``transform`` projects data through the fitted unmixing
    matrix, zeroes the rejected components, and reconstructs, so it can
    be applied to the fitted trial or to further data from the same
    channel configuration.
    """

    def __init__(
        self,
        kurtosis_sigma_factor: float = 3.0,
        p2p_percentile: float = 95.0,
        max_iter: int = DEFAULT_MAX_ITER,
        tol: float = DEFAULT_TOL,
        seed: int = DEFAULT_SEED,
    ):
        self.kurtosis_sigma_factor = kurtosis_sigma_factor
        self.p2p_percentile = p2p_percentile
        self.max_iter = max_iter
        self.tol = tol
        self.seed = seed

    def fit(self, X, y=None):
        result = denoise_eeg(
            np.asarray(X, float).T,
            criteria=ArtifactCriteria(self.kurtosis_sigma_factor, self.p2p_percentile),
            max_iter=self.max_iter,
            tol=self.tol,
            seed=self.seed,
        )
        self.result_ = result
        self.mixing_ = result.mixing
        self.components_ = result.unmixing
        self.rejected_ = result.rejected
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        return self

    def transform(self, X):
        if not hasattr(self, "result_"):
            raise RuntimeError("FastIcaDenoiser must be fitted before transform")
        data = np.asarray(X, float).T
        if data.shape[0] == 1:
            return data.T.copy()
        centered = data - self.result_.channel_means[:, None]
        sources = self.result_.unmixing @ centered
        if self.rejected_:
            sources[sorted(self.rejected_), :] = 0.0
        cleaned = self.result_.mixing @ sources + self.result_.channel_means[:, None]
        return cleaned.T
