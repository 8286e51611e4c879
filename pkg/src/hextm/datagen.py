"""Self-play generation of labeled Hex snapshots.

Games are played by flat Monte Carlo: every legal move is scored by random
full-board playouts and the best win rate is played (ties break toward the
lowest cell index). Each finished game is then sliced into one record per
position whose move count falls in the configured snapshot range, all
labeled with the game's final winner.

Generation is deterministic: the top-level seed spawns one child seed per
game, so records are reproducible regardless of how games are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .board import Board, Cell
from .dataset import DatasetRecord
from .encoding import encode

_N = 6
_CELLS = _N * _N
# virtual connectivity nodes appended after the 36 cells
_TOP, _BOTTOM, _LEFT, _RIGHT = _CELLS, _CELLS + 1, _CELLS + 2, _CELLS + 3

_OFFSETS = ((-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0))


@dataclass(frozen=True)
class GenConfig:
    n_games: int
    playouts_per_move: int = 50
    snapshot_range: tuple[int, int] = (2, 22)
    seed: int = 0

    def __post_init__(self):
        if self.n_games < 1:
            raise ValueError("n_games must be positive")
        if self.playouts_per_move < 1:
            raise ValueError("playouts_per_move must be positive")
        lo, hi = self.snapshot_range
        if not 2 <= lo <= hi <= _CELLS:
            raise ValueError(
                f"snapshot_range must satisfy 2 <= min <= max <= {_CELLS}, "
                f"got {self.snapshot_range}"
            )


@dataclass(frozen=True)
class GameRecord:
    snapshots: tuple[Board, ...]  # positions after moves 1..end, in order
    winner: Cell
    seed: int


@njit(cache=True, inline="always")
def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


@njit(cache=True, inline="always")
def _union(parent, a, b):
    parent[_find(parent, a)] = _find(parent, b)


@njit(cache=True)
def _winner(cells, parent):
    """0 = undecided, 1 = Black (top-bottom), 2 = White (left-right)."""
    for i in range(_CELLS + 4):
        parent[i] = i
    for i in range(_CELLS):
        color = cells[i]
        if color == 0:
            continue
        r = i // _N
        c = i % _N
        if color == 1:
            if r == 0:
                _union(parent, i, _TOP)
            if r == _N - 1:
                _union(parent, i, _BOTTOM)
        else:
            if c == 0:
                _union(parent, i, _LEFT)
            if c == _N - 1:
                _union(parent, i, _RIGHT)
        for dr, dc in _OFFSETS:
            nr = r + dr
            nc = c + dc
            if 0 <= nr < _N and 0 <= nc < _N and cells[nr * _N + nc] == color:
                _union(parent, i, nr * _N + nc)
    if _find(parent, _TOP) == _find(parent, _BOTTOM):
        return 1
    if _find(parent, _LEFT) == _find(parent, _RIGHT):
        return 2
    return 0


@njit(cache=True)
def _black_connects(cells, parent):
    """Top-bottom Black connectivity on a FULL board (no empty cells).

    On a full board exactly one player connects, so this single check
    decides the playout. Only backward neighbors are unioned; row-major
    order still visits every same-color edge once.
    """
    for i in range(_CELLS + 2):
        parent[i] = i
    for i in range(_CELLS):
        if cells[i] != 1:
            continue
        r = i // _N
        c = i % _N
        if r == 0:
            _union(parent, i, _TOP)
        if r == _N - 1:
            _union(parent, i, _BOTTOM)
        if r > 0 and cells[i - _N] == 1:
            _union(parent, i, i - _N)
        if r > 0 and c < _N - 1 and cells[i - _N + 1] == 1:
            _union(parent, i, i - _N + 1)
        if c > 0 and cells[i - 1] == 1:
            _union(parent, i, i - 1)
    return _find(parent, _TOP) == _find(parent, _BOTTOM)


@njit(cache=True)
def _playout(cells, move, mover, pool, fill, parent, rng):
    """Winner after playing ``move`` and filling the rest uniformly at random.

    ``pool`` holds every currently empty cell including ``move``; it is
    shuffled in place and ``move`` is skipped during the fill, so remaining
    stones alternate colors starting with the opponent.
    """
    for i in range(_CELLS):
        fill[i] = cells[i]
    fill[move] = mover
    for k in range(pool.shape[0] - 1, 0, -1):
        j = int(rng.integers(0, k + 1))
        tmp = pool[k]
        pool[k] = pool[j]
        pool[j] = tmp
    color = 3 - mover
    for idx in range(pool.shape[0]):
        cell = pool[idx]
        if cell == move:
            continue
        fill[cell] = color
        color = 3 - color
    return 1 if _black_connects(fill, parent) else 2


@njit(cache=True)
def _play_game(playouts_per_move, rng):
    """One complete self-play game; returns (snapshots, n_moves, winner)."""
    cells = np.zeros(_CELLS, dtype=np.uint8)
    snaps = np.zeros((_CELLS, _CELLS), dtype=np.uint8)
    fill = np.empty(_CELLS, dtype=np.uint8)
    parent = np.empty(_CELLS + 4, dtype=np.int64)
    cand = np.empty(_CELLS, dtype=np.int64)
    pool_buf = np.empty(_CELLS, dtype=np.int64)
    n_moves = 0
    winner = 0
    while winner == 0 and n_moves < _CELLS:
        mover = 1 if n_moves % 2 == 0 else 2
        n_empty = 0
        for i in range(_CELLS):
            if cells[i] == 0:
                cand[n_empty] = i
                pool_buf[n_empty] = i
                n_empty += 1
        pool = pool_buf[:n_empty]
        best_move = -1
        best_wins = -1
        for ci in range(n_empty):  # ascending, so > keeps the lowest tied cell
            move = cand[ci]
            wins = 0
            for _ in range(playouts_per_move):
                if _playout(cells, move, mover, pool, fill, parent, rng) == mover:
                    wins += 1
            if wins > best_wins:
                best_wins = wins
                best_move = move
        cells[best_move] = mover
        snaps[n_moves] = cells
        n_moves += 1
        winner = _winner(cells, parent)
    return snaps[:n_moves], n_moves, winner


def play_game(playouts_per_move: int, seed: int) -> GameRecord:
    """Self-play one game to completion under its own seeded stream."""
    if playouts_per_move < 1:
        raise ValueError("playouts_per_move must be positive")
    rng = np.random.default_rng(seed)
    snaps, n_moves, winner = _play_game(playouts_per_move, rng)
    boards = tuple(
        Board(tuple(int(v) for v in snaps[k])) for k in range(n_moves)
    )
    return GameRecord(snapshots=boards, winner=Cell(winner), seed=seed)


def game_seeds(config: GenConfig) -> list[int]:
    """One independent child seed per game, derived from config.seed."""
    state = np.random.SeedSequence(config.seed).generate_state(
        config.n_games, dtype=np.uint64
    )
    return [int(s) for s in state]


def generate_games(config: GenConfig, progress=None) -> list[GameRecord]:
    games = []
    for i, seed in enumerate(game_seeds(config)):
        games.append(play_game(config.playouts_per_move, seed))
        if progress is not None:
            progress(i + 1, config.n_games)
    return games


def snapshot_games(games: list[GameRecord], config: GenConfig) -> list[DatasetRecord]:
    """Slice finished games into labeled records inside the snapshot range."""
    if not games:
        raise ValueError("no games to snapshot")
    lo, hi = config.snapshot_range
    records = []
    for game in games:
        label = 1 if game.winner == Cell.BLACK else 0
        for board in game.snapshots:
            if lo <= board.move_count <= hi:
                records.append(DatasetRecord(encode(board), label, board.move_count))
    return records


def generate_dataset(config: GenConfig, progress=None) -> list[DatasetRecord]:
    return snapshot_games(generate_games(config, progress=progress), config)
