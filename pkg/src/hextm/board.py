"""Hex game rules: board state, move application, and winner detection.

The board is an n x n rhombus of hexagons (n=6 by default). Black owns the
top and bottom edges and wins by connecting them with an unbroken chain;
White owns the left and right edges. Black moves first. Hex cannot end in
a draw, so a filled board always has exactly one winner.

Coordinates are 1-based (row, col) pairs with row 1 at the top. Cell names
use letters for columns and digits for rows, so "d2" is row 2, column 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

Coord = tuple[int, int]

# The six hex neighbours of (r, c) for this board orientation.
NEIGHBOR_OFFSETS: tuple[Coord, ...] = (
    (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0),
)

DEFAULT_SIZE = 6

COLUMN_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class Cell(IntEnum):
    EMPTY = 0
    BLACK = 1
    WHITE = 2


class InvalidBoardError(ValueError):
    """Cell contents violate the piece-count rules of alternating play."""


class IllegalMoveError(ValueError):
    """Move targets an occupied cell."""


class GameOverError(ValueError):
    """Move or move enumeration requested on a decided game."""


def neighbors(pos: Coord, board_size: int = DEFAULT_SIZE) -> set[Coord]:
    """In-bounds hex neighbours of a 1-based (row, col) position."""
    r, c = pos
    if not (1 <= r <= board_size and 1 <= c <= board_size):
        raise ValueError(f"position {pos} outside {board_size}x{board_size} board")
    return {
        (r + dr, c + dc)
        for dr, dc in NEIGHBOR_OFFSETS
        if 1 <= r + dr <= board_size and 1 <= c + dc <= board_size
    }


def cell_index(pos: Coord, board_size: int = DEFAULT_SIZE) -> int:
    """Row-major 0-based index of a 1-based (row, col) position."""
    r, c = pos
    if not (1 <= r <= board_size and 1 <= c <= board_size):
        raise ValueError(f"position {pos} outside {board_size}x{board_size} board")
    return (r - 1) * board_size + (c - 1)


def index_coord(index: int, board_size: int = DEFAULT_SIZE) -> Coord:
    return index // board_size + 1, index % board_size + 1


def cell_name(pos: Coord) -> str:
    """Letter-digit name of a position: column letter then row digit."""
    r, c = pos
    return f"{COLUMN_LETTERS[c - 1]}{r}"


def parse_cell_name(name: str, board_size: int = DEFAULT_SIZE) -> Coord:
    name = name.strip().lower()
    if len(name) < 2 or name[0] not in COLUMN_LETTERS[:board_size] or not name[1:].isdigit():
        raise ValueError(f"bad cell name {name!r}")
    r = int(name[1:])
    c = COLUMN_LETTERS.index(name[0]) + 1
    if not 1 <= r <= board_size:
        raise ValueError(f"bad cell name {name!r}")
    return r, c


class DisjointSet:
    """Array-based union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def winner_of_cells(cells, board_size: int = DEFAULT_SIZE) -> Cell:
    """Winner of a raw cell grid (row-major, values 0/1/2), or Cell.EMPTY.

    Union-find over the placed pieces plus four virtual edge nodes: Black
    wins when the top and bottom nodes join, White when left and right do.
    """
    n = board_size
    top, bottom, left, right = n * n, n * n + 1, n * n + 2, n * n + 3
    ds = DisjointSet(n * n + 4)
    for idx, piece in enumerate(cells):
        if piece == Cell.EMPTY:
            continue
        r, c = idx // n, idx % n
        if piece == Cell.BLACK:
            if r == 0:
                ds.union(idx, top)
            if r == n - 1:
                ds.union(idx, bottom)
        else:
            if c == 0:
                ds.union(idx, left)
            if c == n - 1:
                ds.union(idx, right)
        for dr, dc in NEIGHBOR_OFFSETS:
            nr, nc = r + dr, c + dc
            if 0 <= nr < n and 0 <= nc < n and cells[nr * n + nc] == piece:
                ds.union(idx, nr * n + nc)
    if ds.connected(top, bottom):
        return Cell.BLACK
    if ds.connected(left, right):
        return Cell.WHITE
    return Cell.EMPTY


@dataclass(frozen=True)
class Board:
    """Immutable Hex position.

    ``cells`` is a row-major tuple of Cell values. The side to move and the
    move count follow from the piece counts, because Black always moves
    first and play alternates.
    """

    cells: tuple[int, ...]
    size: int = DEFAULT_SIZE

    def __post_init__(self):
        n = self.size
        if len(self.cells) != n * n:
            raise InvalidBoardError(f"expected {n * n} cells, got {len(self.cells)}")
        blacks = whites = 0
        for v in self.cells:
            if v == Cell.BLACK:
                blacks += 1
            elif v == Cell.WHITE:
                whites += 1
            elif v != Cell.EMPTY:
                raise InvalidBoardError(f"bad cell value {v!r}")
        if blacks - whites not in (0, 1):
            raise InvalidBoardError(
                f"illegal piece counts: {blacks} black vs {whites} white"
            )

    @classmethod
    def empty(cls, size: int = DEFAULT_SIZE) -> "Board":
        return cls(cells=(Cell.EMPTY,) * (size * size), size=size)

    @property
    def move_count(self) -> int:
        return sum(1 for v in self.cells if v != Cell.EMPTY)

    @property
    def to_move(self) -> Cell:
        blacks = sum(1 for v in self.cells if v == Cell.BLACK)
        return Cell.BLACK if 2 * blacks == self.move_count else Cell.WHITE

    def at(self, pos: Coord) -> Cell:
        return Cell(self.cells[cell_index(pos, self.size)])

    def winner(self) -> Cell:
        """Cell.BLACK / Cell.WHITE for a decided game, Cell.EMPTY otherwise."""
        return winner_of_cells(self.cells, self.size)

    def legal_moves(self) -> list[Coord]:
        """Empty cells in row-major order; raises once the game is decided."""
        if self.winner() != Cell.EMPTY:
            raise GameOverError("game already has a winner")
        n = self.size
        return [
            index_coord(i, n) for i, v in enumerate(self.cells) if v == Cell.EMPTY
        ]

    def apply_move(self, pos: Coord) -> "Board":
        """New board with the side to move placed at ``pos``."""
        if self.winner() != Cell.EMPTY:
            raise GameOverError("game already has a winner")
        idx = cell_index(pos, self.size)
        if self.cells[idx] != Cell.EMPTY:
            raise IllegalMoveError(f"cell {cell_name(pos)} is occupied")
        mover = self.to_move
        cells = self.cells[:idx] + (int(mover),) + self.cells[idx + 1:]
        return Board(cells=cells, size=self.size)


BOARD_CHARS = {Cell.EMPTY: ".", Cell.BLACK: "B", Cell.WHITE: "W"}
CHAR_CELLS = {v: k for k, v in BOARD_CHARS.items()}


def format_board(board: Board) -> str:
    """Text form: one line per row (row 1 first) of characters . / B / W."""
    n = board.size
    rows = []
    for r in range(n):
        rows.append("".join(BOARD_CHARS[Cell(v)] for v in board.cells[r * n:(r + 1) * n]))
    return "\n".join(rows)


def parse_board(text: str, board_size: int = DEFAULT_SIZE) -> Board:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if len(lines) != board_size:
        raise InvalidBoardError(f"expected {board_size} rows, got {len(lines)}")
    cells = []
    for ln in lines:
        if len(ln) != board_size:
            raise InvalidBoardError(f"row {ln!r} does not have {board_size} cells")
        for ch in ln:
            if ch not in CHAR_CELLS:
                raise InvalidBoardError(f"bad board character {ch!r}")
            cells.append(int(CHAR_CELLS[ch]))
    return Board(cells=tuple(cells), size=board_size)
