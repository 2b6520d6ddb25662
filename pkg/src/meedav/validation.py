"""Input validation helpers used at public entry points.

Small check_* functions in the spirit of sklearn's ``check_array``: coerce
to float ndarrays and raise the package's own exception types with readable
messages instead of letting numpy errors bubble up.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParameter, EmptyInput, LengthMismatch


def as_float_vector(x, name: str = "x") -> np.ndarray:
    """Coerce to a 1-D float64 array."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        arr = np.atleast_1d(np.squeeze(arr))
    if arr.ndim != 1:
        raise BadParameter(f"{name} must be one-dimensional, got shape {np.shape(x)}")
    return arr


def as_float_matrix(x, name: str = "X") -> np.ndarray:
    """Coerce to a 2-D float64 array (rows = channels/components)."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2:
        raise BadParameter(f"{name} must be two-dimensional, got shape {np.shape(x)}")
    return arr


def check_not_empty(arr: np.ndarray, name: str = "x") -> np.ndarray:
    if arr.size == 0:
        raise EmptyInput(f"{name} is empty")
    return arr


def check_same_length(a, b, name_a: str = "a", name_b: str = "b") -> None:
    if len(a) != len(b):
        raise LengthMismatch(
            f"{name_a} and {name_b} must have equal length ({len(a)} != {len(b)})"
        )


def check_positive(value: float, name: str) -> float:
    if not value > 0:
        raise BadParameter(f"{name} must be > 0, got {value!r}")
    return value


def check_in_range(value: float, name: str, low: float, high: float) -> float:
    """Open-interval range check: low < value < high."""
    if not (low < value < high):
        raise BadParameter(f"{name} must lie in ({low}, {high}), got {value!r}")
    return value
