"""Model persistence.

Layout: one magic line, one JSON header line (sorted keys, so identical
models serialize to identical bytes), then the automaton state matrix as
little-endian uint16 and the clause weights as little-endian int32.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .machine import ClauseBank, TMConfig

MODEL_MAGIC = b"hextm-model v1\n"


class ModelFormatError(ValueError):
    """Raised when a model file is malformed or inconsistent."""


def save_model(bank: ClauseBank, path: str | Path) -> None:
    header = {
        "config": asdict(bank.config),
        "n_features": bank.n_features,
        "states_dtype": "<u2",
        "weights_dtype": "<i4",
    }
    blob = json.dumps(header, sort_keys=True, separators=(",", ":")).encode()
    with open(path, "wb") as fh:
        fh.write(MODEL_MAGIC)
        fh.write(blob + b"\n")
        fh.write(np.ascontiguousarray(bank.states, dtype="<u2").tobytes())
        fh.write(np.ascontiguousarray(bank.weights, dtype="<i4").tobytes())


def load_model(path: str | Path) -> ClauseBank:
    with open(path, "rb") as fh:
        magic = fh.read(len(MODEL_MAGIC))
        if magic != MODEL_MAGIC:
            raise ModelFormatError(f"{path}: not a model file (bad magic)")
        header_line = fh.readline()
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"{path}: unreadable header: {exc}") from exc
        try:
            config = TMConfig(**header["config"])
            n_features = int(header["n_features"])
            states_dtype = np.dtype(header["states_dtype"])
            weights_dtype = np.dtype(header["weights_dtype"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"{path}: invalid header: {exc}") from exc

        n, two_o = config.n_clauses, 2 * n_features
        states_bytes = fh.read(n * two_o * states_dtype.itemsize)
        states = np.frombuffer(states_bytes, dtype=states_dtype)
        if states.size != n * two_o:
            raise ModelFormatError(
                f"{path}: truncated state matrix, expected {n}x{two_o} "
                f"({n * two_o} entries), got {states.size}"
            )
        weights_bytes = fh.read(n * weights_dtype.itemsize)
        weights = np.frombuffer(weights_bytes, dtype=weights_dtype)
        if weights.size != n:
            raise ModelFormatError(
                f"{path}: truncated weights, expected {n}, got {weights.size}"
            )
        if fh.read(1):
            raise ModelFormatError(f"{path}: trailing bytes after model data")

    try:
        return ClauseBank(config, n_features,
                          states.reshape(n, two_o).astype(np.uint16),
                          weights.astype(np.int32))
    except ValueError as exc:
        raise ModelFormatError(f"{path}: {exc}") from exc
