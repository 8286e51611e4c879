"""Board <-> 72-bit feature vector mapping."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hextm.board import Board, Cell, parse_cell_name
from hextm.encoding import (InvalidEncodingError, N_FEATURES, cell_feature,
                            decode, encode, feature_cell)

from oracles import random_board_cells


def test_vector_shape_and_dtype():
    x = encode(Board.empty())
    assert x.shape == (N_FEATURES,)
    assert x.dtype == np.uint8
    assert not x.flags.writeable
    assert x.sum() == 0


def test_black_d2_sets_feature_10():
    b = Board.empty().apply_move(parse_cell_name("d2"))
    x = encode(b)
    assert x[10 - 1] == 1
    assert x.sum() == 1


def test_black_f1_sets_feature_6():
    b = Board.empty().apply_move(parse_cell_name("f1"))
    x = encode(b)
    assert x[6 - 1] == 1
    assert x.sum() == 1


def test_white_d2_sets_feature_46():
    b = Board.empty().apply_move(parse_cell_name("a1"))  # black elsewhere
    b = b.apply_move(parse_cell_name("d2"))  # white at d2
    x = encode(b)
    assert x[36 + 10 - 1] == 1
    assert x[10 - 1] == 0


def test_feature_cell_mapping():
    assert feature_cell(10) == ((2, 4), Cell.BLACK)
    assert feature_cell(6) == ((1, 6), Cell.BLACK)
    assert feature_cell(46) == ((2, 4), Cell.WHITE)
    assert feature_cell(72) == ((6, 6), Cell.WHITE)
    with pytest.raises(ValueError):
        feature_cell(0)
    with pytest.raises(ValueError):
        feature_cell(73)


def test_cell_feature_inverse():
    for p in range(1, N_FEATURES + 1):
        pos, color = feature_cell(p)
        assert cell_feature(pos, color) == p


def test_popcount_equals_move_count():
    b = Board.empty().apply_move((1, 1)).apply_move((2, 2)).apply_move((3, 3))
    assert encode(b).sum() == b.move_count == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_decode_inverts_encode(seed):
    rng = np.random.default_rng(seed)
    b = Board(cells=tuple(random_board_cells(rng)))
    assert decode(encode(b)) == b


def test_decode_rejects_both_colors_on_one_cell():
    x = np.zeros(N_FEATURES, dtype=np.uint8)
    x[9] = 1
    x[36 + 9] = 1
    with pytest.raises(InvalidEncodingError):
        decode(x)


def test_decode_rejects_wrong_shape():
    with pytest.raises(InvalidEncodingError):
        decode(np.zeros(71, dtype=np.uint8))


def test_decode_rejects_illegal_counts():
    x = np.zeros(N_FEATURES, dtype=np.uint8)
    x[36] = 1  # a single white piece: white cannot have moved first
    with pytest.raises(ValueError):
        decode(x)
