"""Propositional encoding of Hex positions as flat bit vectors.

A 6x6 board becomes 72 bits: features 1..36 flag Black pieces cell by cell
(row-major from the top left), features 37..72 flag White pieces in the
same order. So feature 10 means "Black piece on d2" and feature 6 means
"Black piece on f1". A cell never has both its Black and White bit set.
"""

from __future__ import annotations

import numpy as np

from .board import Board, Cell, index_coord, DEFAULT_SIZE

N_FEATURES = 2 * DEFAULT_SIZE * DEFAULT_SIZE


class InvalidEncodingError(ValueError):
    """Bit vector asserts both a Black and a White piece on one cell."""


def encode(board: Board) -> np.ndarray:
    """Read-only uint8 vector of 2*n*n presence bits for ``board``."""
    n = board.size
    bits = np.zeros(2 * n * n, dtype=np.uint8)
    for idx, v in enumerate(board.cells):
        if v == Cell.BLACK:
            bits[idx] = 1
        elif v == Cell.WHITE:
            bits[n * n + idx] = 1
    bits.flags.writeable = False
    return bits


def decode(features, board_size: int = DEFAULT_SIZE) -> Board:
    """Inverse of :func:`encode`; rejects doubly-occupied cells."""
    bits = np.asarray(features, dtype=np.uint8)
    n = board_size
    if bits.shape != (2 * n * n,):
        raise InvalidEncodingError(
            f"expected {2 * n * n} bits, got shape {bits.shape}"
        )
    cells = []
    for idx in range(n * n):
        black, white = bits[idx], bits[n * n + idx]
        if black and white:
            raise InvalidEncodingError(
                f"cell index {idx} flagged as both Black and White"
            )
        cells.append(int(Cell.BLACK) if black else int(Cell.WHITE) if white else 0)
    return Board(cells=tuple(cells), size=n)


def feature_cell(feature_index: int, board_size: int = DEFAULT_SIZE) -> tuple[tuple[int, int], Cell]:
    """(position, color) encoded by a 1-based feature index."""
    n2 = board_size * board_size
    if not 1 <= feature_index <= 2 * n2:
        raise ValueError(f"feature index {feature_index} out of range 1..{2 * n2}")
    if feature_index <= n2:
        return index_coord(feature_index - 1, board_size), Cell.BLACK
    return index_coord(feature_index - n2 - 1, board_size), Cell.WHITE


def cell_feature(pos: tuple[int, int], color: Cell, board_size: int = DEFAULT_SIZE) -> int:
    """1-based feature index asserting ``color`` at ``pos``."""
    from .board import cell_index

    if color not in (Cell.BLACK, Cell.WHITE):
        raise ValueError("feature colors are Black or White")
    offset = 0 if color == Cell.BLACK else board_size * board_size
    return offset + cell_index(pos, board_size) + 1
