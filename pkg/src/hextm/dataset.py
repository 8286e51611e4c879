"""Labeled board snapshots and their line-oriented interchange file.

Each record is one 72-bit feature vector, the final winner of the game the
snapshot came from (1 = Black), and the snapshot's move count. On disk:
a `hextm-dataset v1` header line, then one record per line as 72 characters
of {0,1}, a space, the label, a space, the move count in decimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .encoding import N_FEATURES

DATASET_MAGIC = "hextm-dataset v1"


class DatasetFormatError(ValueError):
    """Raised when a dataset file cannot be parsed or violates an invariant."""


@dataclass(frozen=True)
class DatasetRecord:
    features: np.ndarray  # uint8[72], read-only
    label: int
    move_count: int

    def __post_init__(self):
        feats = np.ascontiguousarray(self.features, dtype=np.uint8)
        if feats is self.features:
            feats = feats.view()  # freeze our view, not the caller's array
        feats.flags.writeable = False
        object.__setattr__(self, "features", feats)
        if feats.shape != (N_FEATURES,) or not np.all(feats <= 1):
            raise ValueError(f"features must be {N_FEATURES} bits")
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label}")
        if self.move_count < 2:
            raise ValueError(f"move_count must be at least 2, got {self.move_count}")
        popcount = int(feats.sum())
        if popcount != self.move_count:
            raise ValueError(
                f"move_count {self.move_count} does not match {popcount} set bits"
            )


def record_line(record: DatasetRecord) -> str:
    bits = "".join("1" if b else "0" for b in record.features)
    return f"{bits} {record.label} {record.move_count}"


def parse_record_line(line: str) -> DatasetRecord:
    parts = line.split(" ")
    if len(parts) != 3:
        raise ValueError("expected '<72 bits> <label> <moveCount>'")
    bits, label_text, count_text = parts
    if len(bits) != N_FEATURES or set(bits) - {"0", "1"}:
        raise ValueError(f"feature field must be {N_FEATURES} characters of 0/1")
    if label_text not in ("0", "1"):
        raise ValueError(f"label must be 0 or 1, got {label_text!r}")
    if not count_text.isdigit():
        raise ValueError(f"move count must be a decimal integer, got {count_text!r}")
    features = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    return DatasetRecord(features, int(label_text), int(count_text))


def write_dataset(records: Iterable[DatasetRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(DATASET_MAGIC + "\n")
        for record in records:
            fh.write(record_line(record) + "\n")


def read_dataset(path: str | Path) -> list[DatasetRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != DATASET_MAGIC:
            raise DatasetFormatError(
                f"{path}:1: expected header {DATASET_MAGIC!r}, got {header!r}"
            )
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                records.append(parse_record_line(line))
            except ValueError as exc:
                raise DatasetFormatError(f"{path}:{lineno}: {exc}") from exc
    return records


def to_arrays(records: list[DatasetRecord]) -> tuple[np.ndarray, np.ndarray]:
    """Stacked (features, labels) arrays for training and evaluation."""
    if not records:
        return (np.zeros((0, N_FEATURES), dtype=np.uint8),
                np.zeros(0, dtype=np.uint8))
    X = np.stack([r.features for r in records]).astype(np.uint8)
    labels = np.array([r.label for r in records], dtype=np.uint8)
    return X, labels
