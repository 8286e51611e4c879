"""HTTP service for prediction and interpretation over one loaded model.

The model (and an optional reference dataset for clause statistics) is
loaded eagerly in the app factory, so a constructed app is fully ready and
every handler is a pure read. Boards travel as flat 36-character strings
of {., B, W}, row-major from the top-left corner.

The payload builders here are also used by the CLI's structured output, so
both interfaces emit identical JSON for identical inputs.
"""

from __future__ import annotations

import time
from pathlib import Path
from typing import Iterable, Sequence

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .board import CHAR_CELLS, Board, InvalidBoardError
from .dataset import read_dataset
from .encoding import encode
from .interpret import (ClauseStats, RankedClause, clause_stats,
                        local_interpretation, pattern_marks, rank_clauses)
from .machine import ClauseBank, Prediction
from .model_io import load_model

BOARD_WIRE_LENGTH = 36


def board_from_wire(value) -> Board:
    """Parse and validate the wire form; raises InvalidBoardError."""
    if not isinstance(value, str):
        raise InvalidBoardError("board must be a string")
    if len(value) != BOARD_WIRE_LENGTH:
        raise InvalidBoardError(
            f"board must be {BOARD_WIRE_LENGTH} characters, got {len(value)}"
        )
    bad = sorted(set(value) - set(CHAR_CELLS))
    if bad:
        raise InvalidBoardError(f"illegal board characters: {bad}")
    return Board(tuple(int(CHAR_CELLS[ch]) for ch in value))


def prediction_payload(pred: Prediction) -> dict:
    return {
        "label": "black" if pred.label == 1 else "white",
        "voteSum": pred.vote_sum,
        "margin": pred.margin,
    }


def predict_payload(bank: ClauseBank, board: Board) -> dict:
    return prediction_payload(bank.predict(encode(board)))


def interpret_payload(bank: ClauseBank, board: Board) -> dict:
    heat = local_interpretation(bank, board)

    def flat(grid):
        return [v for row in grid for v in row]

    return {
        "blackCounts": flat(heat.black_counts),
        "whiteCounts": flat(heat.white_counts),
        "prediction": prediction_payload(heat.predicted),
    }


def clause_entry(ranked: RankedClause) -> dict:
    st = ranked.stats
    marks = pattern_marks(ranked.literals)
    return {
        "clauseIndex": st.clause_index,
        "polarity": "+" if st.polarity == 1 else "-",
        "score": ranked.score,
        "precision": st.precision,
        "coverage": st.coverage,
        "tp": st.tp,
        "fp": st.fp,
        "fn": st.fn,
        "weight": ranked.weight,
        "literals": [
            {"feature": lit.feature_index, "negated": lit.negated}
            for lit in ranked.literals
        ],
        "pattern": [mark for row in marks for mark in row],
    }


def top_clauses_payload(bank: ClauseBank, stats: list[ClauseStats],
                        polarity: int, k: int, alpha: float) -> dict:
    ranked = rank_clauses(bank, stats, polarity, alpha)
    return {
        "polarity": "+" if polarity == 1 else "-",
        "truncated": k > len(ranked),
        "clauses": [clause_entry(rc) for rc in ranked[:k]],
    }


def parse_polarity(value: str) -> int | None:
    """Accepts +/-/pos/neg; a bare '+' in a query string decodes to a space."""
    text = value.strip().lower() if value.strip() else "+"
    if text in ("+", "pos", "positive"):
        return 1
    if text in ("-", "neg", "negative"):
        return -1
    return None


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=status)


def create_app(model_path: str | Path | None = None,
               data_path: str | Path | None = None,
               origins: Sequence[str] | Iterable[str] = ()) -> FastAPI:
    """Build the app, loading the model and statistics before it serves."""
    app = FastAPI(title="hextm")
    origins = [o for o in origins if o]
    if origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    bank: ClauseBank | None = None
    stats: list[ClauseStats] | None = None
    model_info = None
    if model_path is not None:
        started = time.perf_counter()
        bank = load_model(model_path)
        if data_path is not None:
            stats = clause_stats(bank, read_dataset(data_path))
        model_info = {
            "path": str(model_path),
            "nClauses": bank.n_clauses,
            "o": bank.n_features,
            "loadTimeMs": (time.perf_counter() - started) * 1000.0,
        }

    async def _board_or_error(request: Request) -> Board | JSONResponse:
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "request body must be a JSON object")
        try:
            return board_from_wire(body.get("board"))
        except InvalidBoardError as exc:
            return _error(400, str(exc))

    @app.post("/predict")
    async def predict(request: Request):
        if bank is None:
            return _error(503, "no model loaded")
        board = await _board_or_error(request)
        if isinstance(board, JSONResponse):
            return board
        return JSONResponse(predict_payload(bank, board))

    @app.post("/interpret")
    async def interpret(request: Request):
        if bank is None:
            return _error(503, "no model loaded")
        board = await _board_or_error(request)
        if isinstance(board, JSONResponse):
            return board
        return JSONResponse(interpret_payload(bank, board))

    @app.get("/clauses/top")
    async def clauses_top(polarity: str = "+", k: str = "10", alpha: str = "10"):
        if bank is None or stats is None:
            return _error(503, "clause statistics unavailable")
        pol = parse_polarity(polarity)
        if pol is None:
            return _error(400, f"invalid polarity {polarity!r}")
        try:
            k_count = int(k)
            alpha_value = float(alpha)
        except ValueError:
            return _error(400, "k must be an integer and alpha a number")
        if k_count < 1:
            return _error(400, "k must be at least 1")
        if alpha_value < 0:
            return _error(400, "alpha must be non-negative")
        return JSONResponse(top_clauses_payload(bank, stats, pol, k_count, alpha_value))

    @app.get("/health")
    async def health():
        return JSONResponse({
            "status": "ok" if bank is not None else "no_model",
            "modelInfo": model_info,
        })

    return app
