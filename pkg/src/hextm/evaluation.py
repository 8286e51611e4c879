"""Train/test orchestration and accuracy reporting.

Covers the seeded split, overall and per-move-count accuracy, and the
end-to-end experiment runner that generates (or reuses) a dataset, fits a
clause bank, evaluates both splits, and persists the model plus a JSON
report that round-trips losslessly.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import machine
from .dataset import DatasetRecord, read_dataset, to_arrays, write_dataset
from .datagen import GenConfig, generate_dataset
from .machine import ClauseBank, TMConfig
from .model_io import save_model


@dataclass(frozen=True)
class SplitConfig:
    train_fraction: float = 0.67
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must be strictly between 0 and 1")


@dataclass(frozen=True)
class EvalResult:
    accuracy: float
    per_move_count: dict[int, tuple[int, float]]  # moveCount -> (n, accuracy)
    n_records: int


@dataclass(frozen=True)
class EvalReport:
    train_accuracy: float
    test_accuracy: float
    per_move_count: dict[int, tuple[int, float]]  # over the test split
    class_counts: dict[int, int]  # label -> count over the full dataset
    tm_config: TMConfig
    split_config: SplitConfig


def split(records: list[DatasetRecord],
          config: SplitConfig) -> tuple[list[DatasetRecord], list[DatasetRecord]]:
    """Seeded train/test split; stratified keeps per-label proportions."""
    rng = np.random.default_rng(config.seed)
    n = len(records)
    if config.stratified:
        train_idx: list[int] = []
        test_idx: list[int] = []
        for label in (0, 1):
            idx = [i for i, r in enumerate(records) if r.label == label]
            perm = rng.permutation(len(idx))
            cut = round(config.train_fraction * len(idx))
            train_idx.extend(idx[i] for i in perm[:cut])
            test_idx.extend(idx[i] for i in perm[cut:])
    else:
        perm = rng.permutation(n)
        cut = round(config.train_fraction * n)
        train_idx, test_idx = list(perm[:cut]), list(perm[cut:])
    if not train_idx or not test_idx:
        raise ValueError(f"split of {n} records leaves an empty side")
    return ([records[i] for i in train_idx], [records[i] for i in test_idx])


def evaluate(bank: ClauseBank, records: list[DatasetRecord]) -> EvalResult:
    """Prediction accuracy, overall and grouped by move count."""
    if not records:
        raise ValueError("dataset is empty")
    X, labels = to_arrays(records)
    hits = (bank.predict_batch(X) == labels)
    per_move: dict[int, tuple[int, float]] = {}
    counts = np.array([r.move_count for r in records])
    for mc in sorted(set(int(c) for c in counts)):
        mask = counts == mc
        per_move[mc] = (int(mask.sum()), float(hits[mask].mean()))
    return EvalResult(
        accuracy=float(hits.mean()),
        per_move_count=per_move,
        n_records=len(records),
    )


def class_counts(records: list[DatasetRecord]) -> dict[int, int]:
    counts = {0: 0, 1: 0}
    for r in records:
        counts[r.label] += 1
    return counts


# -- report serialization ---------------------------------------------------

def report_to_json(report: EvalReport) -> str:
    payload = {
        "trainAccuracy": report.train_accuracy,
        "testAccuracy": report.test_accuracy,
        "perMoveCount": {
            str(mc): {"n": n, "accuracy": acc}
            for mc, (n, acc) in report.per_move_count.items()
        },
        "classCounts": {str(k): v for k, v in report.class_counts.items()},
        "configEcho": {
            "tm": asdict(report.tm_config),
            "split": asdict(report.split_config),
        },
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def report_from_json(text: str) -> EvalReport:
    payload = json.loads(text)
    return EvalReport(
        train_accuracy=payload["trainAccuracy"],
        test_accuracy=payload["testAccuracy"],
        per_move_count={
            int(mc): (entry["n"], entry["accuracy"])
            for mc, entry in payload["perMoveCount"].items()
        },
        class_counts={int(k): v for k, v in payload["classCounts"].items()},
        tm_config=TMConfig(**payload["configEcho"]["tm"]),
        split_config=SplitConfig(**payload["configEcho"]["split"]),
    )


def report_table(report: EvalReport) -> str:
    """Plain-text accuracy row: Method / Hyperparameter / Train / Test."""
    cfg = report.tm_config
    hyper = f"Clauses = {cfg.n_clauses}, T = {cfg.T}, s = {cfg.s:g}"
    if cfg.weighted:
        hyper += f", max weight = {cfg.max_weight}"
    rows = [
        ("Method", "Hyperparameter", "Train", "Test"),
        ("Tsetlin Machine", hyper,
         f"{report.train_accuracy:.2%}", f"{report.test_accuracy:.2%}"),
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return "\n".join(
        "  ".join(field.ljust(widths[i]) for i, field in enumerate(row)).rstrip()
        for row in rows
    )


def per_move_table(per_move: dict[int, tuple[int, float]]) -> str:
    lines = ["moves  records  accuracy"]
    for mc in sorted(per_move):
        n, acc = per_move[mc]
        lines.append(f"{mc:>5}  {n:>7}  {acc:.2%}")
    return "\n".join(lines)


def run_experiment(gen_config: GenConfig, tm_config: TMConfig,
                   split_config: SplitConfig, dataset_path: str | Path,
                   model_path: str | Path, report_path: str | Path,
                   progress=None) -> tuple[EvalReport, ClauseBank]:
    """Dataset -> split -> fit -> evaluate -> persist, all seed-determined.

    An existing dataset file at ``dataset_path`` is reused; otherwise it is
    generated from ``gen_config`` and written there first.
    """
    dataset_path = Path(dataset_path)
    if dataset_path.exists():
        records = read_dataset(dataset_path)
    else:
        records = generate_dataset(gen_config)
        write_dataset(records, dataset_path)
    train_records, test_records = split(records, split_config)
    X, labels = to_arrays(train_records)
    bank, _ = machine.train(tm_config, X, labels, progress=progress)
    train_result = evaluate(bank, train_records)
    test_result = evaluate(bank, test_records)
    report = EvalReport(
        train_accuracy=train_result.accuracy,
        test_accuracy=test_result.accuracy,
        per_move_count=test_result.per_move_count,
        class_counts=class_counts(records),
        tm_config=tm_config,
        split_config=split_config,
    )
    save_model(bank, model_path)
    Path(report_path).write_text(report_to_json(report), encoding="utf-8")
    return report, bank
