"""Command-line entry point.

Subcommands: generate (self-play dataset), train, eval, interpret, serve.
Human-readable results go to stdout and progress lines to stderr, so
outputs stay pipeable. Exit codes: 0 success, 2 usage error, 1 runtime
failure.

Relative model and data paths can be redirected with the HEXTM_MODEL_DIR
and HEXTM_DATA_DIR environment variables.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .board import Board, InvalidBoardError, parse_board
from .dataset import DatasetFormatError, read_dataset, to_arrays, write_dataset
from .datagen import GenConfig, generate_dataset
from .evaluation import (EvalReport, SplitConfig, class_counts, evaluate,
                         per_move_table, report_table, report_to_json, split)
from .interpret import clause_stats, local_interpretation, rank_clauses
from .machine import TMConfig, train
from .model_io import ModelFormatError, load_model, save_model

MODEL_DIR_ENV = "HEXTM_MODEL_DIR"
DATA_DIR_ENV = "HEXTM_DATA_DIR"


def _resolve(path: str, env: str) -> Path:
    """Relative paths resolve under the env-configured directory, if set."""
    p = Path(path)
    base = os.environ.get(env)
    if base and not p.is_absolute():
        return Path(base) / p
    return p


def _model_path(path: str) -> Path:
    return _resolve(path, MODEL_DIR_ENV)


def _data_path(path: str) -> Path:
    return _resolve(path, DATA_DIR_ENV)


def _progress(message: str) -> None:
    print(message, file=sys.stderr)


# -- generate ----------------------------------------------------------------

def cmd_generate(args, parser) -> int:
    lo, hi = args.range
    try:
        config = GenConfig(n_games=args.games, playouts_per_move=args.playouts,
                           snapshot_range=(lo, hi), seed=args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    out = _data_path(args.out)

    def on_game(done, total):
        if done % 50 == 0 or done == total:
            _progress(f"game {done}/{total}")

    records = generate_dataset(config, progress=on_game)
    write_dataset(records, out)
    counts = class_counts(records)
    per_move: dict[int, int] = {}
    for r in records:
        per_move[r.move_count] = per_move.get(r.move_count, 0) + 1
    print(f"wrote {len(records)} records to {out}")
    print(f"class balance: black={counts[1]} white={counts[0]}")
    print("moves  records")
    for mc in sorted(per_move):
        print(f"{mc:>5}  {per_move[mc]:>7}")
    return 0


# -- train -------------------------------------------------------------------

def cmd_train(args, parser) -> int:
    if args.epochs < 1:
        parser.error("--epochs must be at least 1")
    try:
        config = TMConfig(
            n_clauses=args.clauses,
            T=args.T if args.T is not None else 0,
            s=args.s,
            epochs=args.epochs,
            seed=args.seed,
            weighted=args.weighted,
        )
    except ValueError as exc:
        parser.error(str(exc))
    records = read_dataset(_data_path(args.data))
    if not records:
        print("error: dataset has no records", file=sys.stderr)
        return 1
    X, labels = to_arrays(records)
    print(f"config: clauses={config.n_clauses} T={config.T} s={config.s:g} "
          f"epochs={config.epochs} seed={config.seed} "
          f"weighted={'on' if config.weighted else 'off'}")

    def on_epoch(epoch, accuracy):
        _progress(f"epoch {epoch + 1}/{config.epochs} train accuracy {accuracy:.4f}")

    bank, trace = train(config, X, labels, progress=on_epoch)
    out = _model_path(args.out_model)
    save_model(bank, out)
    print(f"final train accuracy {trace[-1]:.4f}")
    print(f"saved model to {out}")
    return 0


# -- eval ----------------------------------------------------------------------

def cmd_eval(args, parser) -> int:
    if not 0.0 < args.train_fraction < 1.0:
        parser.error("--train-fraction must be strictly between 0 and 1")
    bank = load_model(_model_path(args.model))
    records = read_dataset(_data_path(args.data))
    split_config = SplitConfig(train_fraction=args.train_fraction,
                               seed=args.split_seed,
                               stratified=not args.no_stratified)
    train_records, test_records = split(records, split_config)
    train_result = evaluate(bank, train_records)
    test_result = evaluate(bank, test_records)
    report = EvalReport(
        train_accuracy=train_result.accuracy,
        test_accuracy=test_result.accuracy,
        per_move_count=test_result.per_move_count,
        class_counts=class_counts(records),
        tm_config=bank.config,
        split_config=split_config,
    )
    if args.out_report:
        Path(args.out_report).write_text(report_to_json(report), encoding="utf-8")
    if args.format == "structured":
        sys.stdout.write(report_to_json(report))
    else:
        print(report_table(report))
        print()
        print("test accuracy by move count:")
        print(per_move_table(report.per_move_count))
        counts = report.class_counts
        print()
        print(f"class balance: black={counts[1]} white={counts[0]}")
    return 0


# -- interpret -----------------------------------------------------------------

def _board_from_text(text: str) -> Board:
    """Parse either the multi-line text format or a flat 36-character row."""
    from .service import board_from_wire
    stripped = text.strip()
    if "\n" not in stripped and len(stripped.split()) == 1:
        return board_from_wire(stripped)
    return parse_board(text)


def _read_board(spec_text: str) -> Board:
    """Board from '-' (stdin), a file path, or an inline board string."""
    if spec_text == "-":
        return _board_from_text(sys.stdin.read())
    path = Path(spec_text)
    if path.exists():
        return _board_from_text(path.read_text(encoding="utf-8"))
    return _board_from_text(spec_text)


def _print_ranked_text(title: str, ranked) -> None:
    from .interpret import render_pattern
    print(title)
    for rc in ranked:
        st = rc.stats
        lits = " ".join(str(l) for l in rc.literals) or "(empty)"
        print(f"clause {st.clause_index}  score={rc.score:.6f}  "
              f"precision={st.precision:.4f}  coverage={st.coverage:.4f}  "
              f"weight={rc.weight}")
        print(f"  literals: {lits}")
        for line in render_pattern(rc.literals).split("\n"):
            print(f"  {line}")
        print()


def cmd_interpret(args, parser) -> int:
    if not args.data and not args.board:
        parser.error("provide --data for clause ranking and/or --board for a heatmap")
    if args.alpha < 0:
        parser.error("--alpha must be non-negative")
    if args.top_k < 1:
        parser.error("--top-k must be at least 1")
    bank = load_model(_model_path(args.model))
    structured: dict = {}

    if args.data:
        from .service import top_clauses_payload  # one wire shape for CLI and HTTP
        records = read_dataset(_data_path(args.data))
        stats = clause_stats(bank, records)
        polarities = {"+": [1], "-": [-1], "both": [1, -1]}[args.polarity]
        for pol in polarities:
            key = "positive" if pol == 1 else "negative"
            structured[key] = top_clauses_payload(bank, stats, pol,
                                                  args.top_k, args.alpha)
            if args.format == "text":
                ranked = rank_clauses(bank, stats, pol, args.alpha)[:args.top_k]
                _print_ranked_text(f"top {len(ranked)} {key}-polarity clauses "
                                   f"(alpha={args.alpha:g}):", ranked)

    if args.board:
        from .service import interpret_payload
        board = _read_board(args.board)
        payload = interpret_payload(bank, board)
        structured["local"] = payload
        if args.format == "text":
            heat = local_interpretation(bank, board)
            pred = payload["prediction"]
            print(f"prediction: {pred['label']}  voteSum={pred['voteSum']}  "
                  f"margin={pred['margin']:.4f}")
            for name, grid in (("black counts:", heat.black_counts),
                               ("white counts:", heat.white_counts)):
                print(name)
                for row in grid:
                    print("  " + " ".join(f"{v:>4}" for v in row))

    if args.format == "structured":
        print(json.dumps(structured, sort_keys=True, indent=2))
    return 0


# -- serve ---------------------------------------------------------------------

def cmd_serve(args, parser) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        model_path=_model_path(args.model) if args.model else None,
        data_path=_data_path(args.data) if args.data else None,
        origins=args.origins.split(",") if args.origins else (),
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hextm",
        description="Interpretable Hex winner prediction with a Tsetlin Machine.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("generate", help="self-play a labeled snapshot dataset",
                       allow_abbrev=False)
    p.add_argument("--games", type=int, default=1000)
    p.add_argument("--playouts", type=int, default=50,
                   help="random playouts per candidate move")
    p.add_argument("--range", type=int, nargs=2, default=(2, 22),
                   metavar=("MIN", "MAX"), help="snapshot move-count range")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="dataset file to write")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train", help="fit a clause bank on a dataset",
                       allow_abbrev=False)
    p.add_argument("--data", required=True)
    p.add_argument("--clauses", type=int, default=10000)
    p.add_argument("--T", type=int, default=None,
                   help="voting margin (default: 80%% of --clauses)")
    p.add_argument("--s", type=float, default=100.0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--out-model", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="split a dataset and score a trained model",
                       allow_abbrev=False)
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--train-fraction", type=float, default=0.67)
    p.add_argument("--split-seed", type=int, default=0)
    p.add_argument("--no-stratified", action="store_true")
    p.add_argument("--out-report", default=None)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("interpret", help="rank clauses and/or explain one board",
                       allow_abbrev=False)
    p.add_argument("--model", required=True)
    p.add_argument("--data", default=None,
                   help="dataset for clause statistics (enables ranking)")
    p.add_argument("--board", default=None,
                   help="36-char board string, board text file, or - for "
                        "stdin (enables heatmap)")
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--alpha", type=float, default=10.0)
    p.add_argument("--polarity", choices=("+", "-", "both"), default="both")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_interpret)

    p = sub.add_parser("serve", help="serve predictions over HTTP",
                       allow_abbrev=False)
    p.add_argument("--model", default=None)
    p.add_argument("--data", default=None,
                   help="reference dataset for clause statistics")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--origins", default="",
                   help="comma-separated allowed CORS origins")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (DatasetFormatError, ModelFormatError, InvalidBoardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
