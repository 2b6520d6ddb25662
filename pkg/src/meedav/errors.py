"""Exceptions and warning categories shared across the package."""

from __future__ import annotations


class MeedavError(Exception):
    """Base class for all errors raised by this package."""


# --- ingest ---------------------------------------------------------------

class MalformedBasename(MeedavError):
    """Trial filename does not follow ``P<n>_S<n>_<nn>_<Task>.<suffix>``."""


class BackendUnavailable(MeedavError):
    """Storage backend cannot be reached or is not configured."""


class ParseError(MeedavError):
    """A modality file is structurally invalid (bad header, cell, or row)."""


class EmptyRecord(MeedavError):
    """A modality file parsed cleanly but contains zero data rows."""


class UnsupportedFormat(MeedavError):
    """Audio container uses a codec outside plain PCM / IEEE float."""


class BoundaryOutOfRange(MeedavError):
    """Segmentation boundary lies outside the raw recording or is inverted."""


class NotFound(MeedavError):
    """Remote repository, path, or trial does not exist."""


class NetworkError(MeedavError):
    """Remote backend request failed at the transport level."""


class RateLimited(MeedavError):
    """Remote API rate limit exhausted.

    ``reset_at`` carries the server-reported reset time (unix seconds)
    when available.
    """

    def __init__(self, message: str, reset_at: float | None = None):
        super().__init__(message)
        self.reset_at = reset_at


# --- align / analytics / denoise -----------------------------------------

class EmptyInput(MeedavError):
    """Operation requires at least one sample."""


class NonMonotonicTimestamps(MeedavError):
    """A strictly decreasing timestamp step was found."""


class InsufficientData(MeedavError):
    """Fewer distinct samples than the operation can work with."""


class DegenerateChannel(MeedavError):
    """A channel has zero variance (or the channel set is rank deficient)."""


class DegenerateComponent(MeedavError):
    """A source component has zero variance."""


class EmptyPoints(MeedavError):
    """Density estimation requires at least one point."""


class LengthMismatch(MeedavError):
    """Paired sequences have different lengths."""


class WindowTooSmall(MeedavError):
    """Correlation window spans fewer than two samples."""


class MissingModality(MeedavError):
    """The requested modality is absent from the trial."""


class NoSuchEvents(MeedavError):
    """The trial has no gaze events of the requested kind."""


class UnknownTrial(MeedavError):
    """No trial with the requested basename exists in the dataset."""


class BadParameter(MeedavError):
    """A user-supplied parameter is out of its accepted range."""


# --- warning categories ---------------------------------------------------

class DiscoveryWarning(UserWarning):
    """Per-file problem during dataset discovery (scan continues)."""


class DisjointSpansWarning(UserWarning):
    """Gaze or audio overlaps less than 10% of the EEG span; modality dropped."""
