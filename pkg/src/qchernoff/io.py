"""File formats and number formatting for the CLI.

State files::

    {"dim": d, "matrix": [[[re, im], ...], ...]}

Distribution files::

    {"probs": [p_0, ..., p_{m-1}]}

Reals are written with 17 significant digits; infinities as ``"-inf"`` / ``"inf"``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .exceptions import ValidationError
from .states import DensityMatrix, validate_density
from .validation import check_distribution


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return format(x, ".17g")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return json.dumps(fmt_float(x)) if not math.isfinite(x) else fmt_float(x)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with 17-significant-digit reals and quoted infinities."""
    return _encode(obj) + "\n"


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def parse_state(data: dict) -> DensityMatrix:
    try:
        dim = int(data["dim"])
        entries = np.asarray(data["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed state: {exc}") from exc
    if entries.shape != (dim, dim, 2):
        raise ValidationError(
            f"state matrix must be {dim}x{dim} pairs [re, im], got shape {entries.shape}"
        )
    M = entries[..., 0] + 1j * entries[..., 1]
    if not np.allclose(M, M.conj().T, atol=1e-10, rtol=0):
        raise ValidationError("state matrix is not Hermitian")
    return validate_density(M)


def load_state(path) -> DensityMatrix:
    return parse_state(_read_json(path))


def state_to_dict(rho) -> dict:
    M = np.asarray(rho, dtype=complex)
    return {
        "dim": int(M.shape[0]),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }


def save_state(rho, path) -> None:
    Path(path).write_text(dumps(state_to_dict(rho)))


def parse_distribution(data: dict) -> np.ndarray:
    try:
        probs = data["probs"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed distribution: missing {exc}") from exc
    return check_distribution(probs)


def load_distribution(path) -> np.ndarray:
    return parse_distribution(_read_json(path))


def save_distribution(p, path) -> None:
    Path(path).write_text(dumps({"probs": list(np.asarray(p, dtype=float))}))
