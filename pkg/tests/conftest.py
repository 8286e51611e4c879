"""Shared fixtures: a small self-play dataset and a trained bank.

Session scope keeps the expensive artifacts (numba warmup, self-play,
training) to one build per test run.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hextm.datagen import GenConfig, generate_dataset
from hextm.dataset import to_arrays, write_dataset
from hextm.evaluation import SplitConfig, split
from hextm.machine import TMConfig, train
from hextm.model_io import save_model


@pytest.fixture(scope="session")
def small_records():
    """Roughly 1,500 self-play records; enough signal to train on."""
    return generate_dataset(GenConfig(n_games=100, playouts_per_move=25, seed=424))


@pytest.fixture(scope="session")
def small_split(small_records):
    return split(small_records, SplitConfig(train_fraction=0.67, seed=9))


@pytest.fixture(scope="session")
def small_config():
    return TMConfig(n_clauses=200, T=160, s=100.0, epochs=10, seed=77)


@pytest.fixture(scope="session")
def small_bank(small_split, small_config):
    train_records, _ = small_split
    X, labels = to_arrays(train_records)
    bank, _ = train(small_config, X, labels)
    return bank


@pytest.fixture(scope="session")
def artifacts_dir(tmp_path_factory, small_records, small_bank):
    """Dataset + model files for CLI and service tests."""
    root = tmp_path_factory.mktemp("artifacts")
    write_dataset(small_records, root / "data.txt")
    save_model(small_bank, root / "model.tm")
    return root


@pytest.fixture()
def rng():
    return np.random.default_rng(20260815)
