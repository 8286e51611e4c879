"""Interpretable winner prediction for 6x6 Hex with a Tsetlin Machine.

The package covers the full pipeline: board rules and feature encoding,
self-play dataset generation, clause-bank training, clause-level
interpretability, evaluation, and CLI/HTTP front ends.
"""

from .board import (Board, Cell, GameOverError, IllegalMoveError,
                    InvalidBoardError, cell_name, format_board, neighbors,
                    parse_board, parse_cell_name)
from .dataset import (DatasetFormatError, DatasetRecord, read_dataset,
                      to_arrays, write_dataset)
from .datagen import GameRecord, GenConfig, generate_dataset, play_game
from .encoding import InvalidEncodingError, N_FEATURES, decode, encode
from .evaluation import (EvalReport, SplitConfig, evaluate, run_experiment,
                         split)
from .interpret import (ClauseStats, Heatmap, RankedClause, clause_stats,
                        local_interpretation, precision_histogram,
                        score_clause, top_clauses)
from .machine import (ClauseBank, ExportedClause, Literal, Prediction,
                      TMConfig, action_of, import_clauses, train)
from .model_io import ModelFormatError, load_model, save_model

__all__ = [
    "Board", "Cell", "GameOverError", "IllegalMoveError", "InvalidBoardError",
    "cell_name", "format_board", "neighbors", "parse_board", "parse_cell_name",
    "DatasetFormatError", "DatasetRecord", "read_dataset", "to_arrays",
    "write_dataset",
    "GameRecord", "GenConfig", "generate_dataset", "play_game",
    "InvalidEncodingError", "N_FEATURES", "decode", "encode",
    "EvalReport", "SplitConfig", "evaluate", "run_experiment", "split",
    "ClauseStats", "Heatmap", "RankedClause", "clause_stats",
    "local_interpretation", "precision_histogram", "score_clause",
    "top_clauses",
    "ClauseBank", "ExportedClause", "Literal", "Prediction", "TMConfig",
    "action_of", "import_clauses", "train",
    "ModelFormatError", "load_model", "save_model",
]

__version__ = "0.1.0"
