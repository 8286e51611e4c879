"""Clause-level interpretability.

Global view: per-clause true/false-positive counting over a dataset, a
precision-weighted score precision^alpha * coverage, and ranked clause
patterns rendered as board templates. Local view: for one board, every
clause that fires contributes its non-negated included literals to a pair
of 6x6 count grids, one per color.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .board import Board
from .dataset import DatasetRecord, to_arrays
from .encoding import encode
from .machine import ClauseBank, Literal, Prediction

PATTERN_MARKS = ("B", "W", "!b", "!w", ".")


@dataclass(frozen=True)
class ClauseStats:
    clause_index: int
    polarity: int
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def coverage(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0


@dataclass(frozen=True)
class RankedClause:
    stats: ClauseStats
    score: float
    weight: int
    literals: tuple[Literal, ...]


@dataclass(frozen=True)
class Heatmap:
    black_counts: tuple[tuple[int, ...], ...]  # [row][col], row 1 first
    white_counts: tuple[tuple[int, ...], ...]
    predicted: Prediction


def clause_stats(bank: ClauseBank, dataset: list[DatasetRecord]) -> list[ClauseStats]:
    """TP/FP/FN per clause, measured against the clause polarity's own class.

    A positive clause targets label 1 and a negative clause targets label 0:
    firing on a target record is a true positive, firing on a non-target
    record a false positive, and staying silent on a target record a false
    negative.
    """
    if not dataset:
        raise ValueError("dataset is empty")
    X, labels = to_arrays(dataset)
    packed = _kernels.pack_dataset(X)
    tp, fp, fn = _kernels.clause_stat_counts(
        bank._include, packed, labels, bank.polarity
    )
    return [
        ClauseStats(j, int(bank.polarity[j]), int(tp[j]), int(fp[j]), int(fn[j]))
        for j in range(bank.n_clauses)
    ]


def score_clause(stats: ClauseStats, alpha: float) -> float:
    """precision^alpha * coverage; alpha tunes how hard precision dominates."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    return stats.precision ** alpha * stats.coverage


def rank_clauses(bank: ClauseBank, stats: list[ClauseStats], polarity: int,
                 alpha: float = 10.0) -> list[RankedClause]:
    """All clauses of one polarity, best score first, index as tie-break."""
    if polarity not in (1, -1):
        raise ValueError("polarity must be +1 or -1")
    picked = [st for st in stats if st.polarity == polarity]
    picked.sort(key=lambda st: (-score_clause(st, alpha), st.clause_index))
    return [
        RankedClause(
            stats=st,
            score=score_clause(st, alpha),
            weight=int(bank.weights[st.clause_index]),
            literals=bank.included_literals(st.clause_index),
        )
        for st in picked
    ]


def top_clauses(bank: ClauseBank, dataset: list[DatasetRecord], polarity: int,
                k: int, alpha: float = 10.0) -> tuple[list[RankedClause], bool]:
    """Best k clauses of one polarity with their board patterns.

    Returns (clauses, truncated); truncated is True when fewer than k
    clauses of that polarity exist, in which case all of them come back.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ranked = rank_clauses(bank, clause_stats(bank, dataset), polarity, alpha)
    return ranked[:k], k > len(ranked)


def pattern_marks(literals: tuple[Literal, ...],
                  board_size: int = 6) -> list[list[str]]:
    """Board template of a clause: required/forbidden piece per cell.

    Marks: 'B'/'W' for a required piece, '!b'/'!w' for a forbidden piece,
    '.' for no constraint. A cell may carry several marks, concatenated in
    the fixed order B, W, !b, !w.
    """
    o = board_size * board_size
    grid = [["" for _ in range(board_size)] for _ in range(board_size)]
    order = {("B", False): 0, ("W", False): 1, ("B", True): 2, ("W", True): 3}
    cell_lits: dict[tuple[int, int], list[tuple[int, str]]] = {}
    for lit in literals:
        p = lit.feature_index
        color = "B" if p <= o else "W"
        cell = p - 1 if p <= o else p - o - 1
        mark = ("!" + color.lower()) if lit.negated else color
        key = (cell // board_size, cell % board_size)
        cell_lits.setdefault(key, []).append((order[(color, lit.negated)], mark))
    for (r, c), marks in cell_lits.items():
        grid[r][c] = "".join(m for _, m in sorted(marks))
    for r in range(board_size):
        for c in range(board_size):
            if not grid[r][c]:
                grid[r][c] = "."
    return grid


def render_pattern(literals: tuple[Literal, ...], board_size: int = 6) -> str:
    """Text rendering of a clause pattern, one board row per line."""
    grid = pattern_marks(literals, board_size)
    width = max(len(cell) for row in grid for cell in row)
    return "\n".join(
        " ".join(cell.ljust(width) for cell in row).rstrip() for row in grid
    )


def parse_pattern(text: str, board_size: int = 6) -> tuple[Literal, ...]:
    """Inverse of render_pattern; reproduces the literal set exactly."""
    o = board_size * board_size
    rows = [line.split() for line in text.strip("\n").split("\n")]
    if len(rows) != board_size or any(len(row) != board_size for row in rows):
        raise ValueError(f"pattern must be {board_size}x{board_size} cells")
    literals = []
    for r, row in enumerate(rows):
        for c, cell in enumerate(row):
            rest = cell
            base = r * board_size + c + 1
            while rest and rest != ".":
                if rest.startswith("B"):
                    literals.append(Literal(base, False))
                    rest = rest[1:]
                elif rest.startswith("W"):
                    literals.append(Literal(base + o, False))
                    rest = rest[1:]
                elif rest.startswith("!b"):
                    literals.append(Literal(base, True))
                    rest = rest[2:]
                elif rest.startswith("!w"):
                    literals.append(Literal(base + o, True))
                    rest = rest[2:]
                else:
                    raise ValueError(f"unknown mark {cell!r} at row {r + 1}")
    return tuple(sorted(literals, key=lambda l: (l.feature_index, l.negated)))


def local_interpretation(bank: ClauseBank, board: Board,
                         include_negated: bool = False) -> Heatmap:
    """Per-cell support counts from the clauses that fire on this board.

    Every firing clause adds 1 per non-negated included literal to the
    matching cell: x_p for p <= 36 lands in black_counts, x_{36+p} in
    white_counts. Clauses count once each regardless of weight.
    ``include_negated`` additionally counts negated literals the same way;
    that is a diagnostic view, not the standard aggregation.
    """
    size = board.size
    o = size * size
    x = encode(board)
    outputs = bank.clause_outputs(x)
    black = np.zeros((size, size), dtype=np.int64)
    white = np.zeros((size, size), dtype=np.int64)
    for j in np.flatnonzero(outputs):
        for lit in bank.included_literals(int(j)):
            if lit.negated and not include_negated:
                continue
            p = lit.feature_index
            cell = p - 1 if p <= o else p - o - 1
            target = black if p <= o else white
            target[cell // size, cell % size] += 1
    return Heatmap(
        black_counts=tuple(tuple(int(v) for v in row) for row in black),
        white_counts=tuple(tuple(int(v) for v in row) for row in white),
        predicted=bank.predict(x),
    )


def precision_histogram(stats: list[ClauseStats], polarity: int,
                        bins: int = 10) -> tuple[np.ndarray, np.ndarray]:
    """Histogram of clause precisions over [0, 1] for one polarity.

    Bins are half-open with the last bin closed, so precision 1.0 lands in
    the final bin. Returns (counts, edges) with len(edges) == bins + 1.
    """
    if bins < 1:
        raise ValueError("bins must be at least 1")
    if polarity not in (1, -1):
        raise ValueError("polarity must be +1 or -1")
    values = [st.precision for st in stats if st.polarity == polarity]
    counts, edges = np.histogram(values, bins=bins, range=(0.0, 1.0))
    return counts, edges
