"""Input checks in the spirit of ``sklearn.utils.validation``.

Every public entry point funnels user input through one of these, so error
messages are uniform and array dtypes predictable.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ValidationError

DIST_ATOL = 1e-12


def check_distribution(p, atol: float = DIST_ATOL, name: str = "distribution") -> np.ndarray:
    """Return ``p`` as a float vector after checking it is a probability vector.

    Exact zeros are kept as they are; nothing is thresholded.
    """
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(f"{name} must be a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    if np.any(arr < 0) or np.any(arr > 1):
        raise ValidationError(f"{name} has entries outside [0, 1]")
    total = float(np.sum(arr))
    if abs(total - 1.0) > atol:
        raise ValidationError(f"{name} sums to {total!r}, not 1")
    return arr


def check_pair(p0, p1, atol: float = DIST_ATOL) -> tuple[np.ndarray, np.ndarray]:
    a = check_distribution(p0, atol, "P0")
    b = check_distribution(p1, atol, "P1")
    if a.shape != b.shape:
        raise ValidationError(f"distribution sizes differ: {a.size} vs {b.size}")
    return a, b


def check_priors(priors) -> tuple[float, float]:
    if priors is None:
        return 0.5, 0.5
    w = np.asarray(priors, dtype=float)
    if w.shape != (2,) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise ValidationError(f"priors must be two non-negative weights summing to 1, got {priors}")
    return float(w[0]), float(w[1])


def check_test_vector(lam, size: int, atol: float = 1e-12) -> np.ndarray:
    arr = np.asarray(lam, dtype=float)
    if arr.shape != (size,):
        raise ValidationError(f"test vector must have length {size}, got shape {arr.shape}")
    if np.any(arr < -atol) or np.any(arr > 1 + atol):
        raise ValidationError("test vector entries must lie in [0, 1]")
    return np.clip(arr, 0.0, 1.0)


def check_open_unit(s: float, name: str = "s") -> float:
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ValidationError(f"{name} must lie strictly inside (0, 1), got {s}")
    return s


def check_positive_int(n, name: str = "n") -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValidationError(f"{name} must be a positive integer, got {n!r}")
    return int(n)
