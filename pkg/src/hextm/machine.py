"""Two-class Tsetlin Machine over binary feature vectors.

A bank of n conjunctive clauses is built by teams of two-action automata,
one per literal (each input bit and its negation). Automaton states run
1..2N; states above N include the literal in the clause. Clauses at odd
1-based positions vote for class 1, even positions vote against, and the
sign of the weighted vote sum is the prediction.

Training processes one labelled example at a time. Each clause is selected
for feedback with probability eps/(2T) where eps is the voting error, then
receives Type I feedback (pattern reinforcement) when its polarity agrees
with the label and Type II feedback (discrimination sharpening) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels


def default_voting_margin(n_clauses: int) -> int:
    """Default T: 80% of the clause count."""
    return max(1, round(0.8 * n_clauses))


@dataclass(frozen=True)
class TMConfig:
    n_clauses: int = 10000
    T: int = 0  # 0 means "derive from n_clauses"
    s: float = 100.0
    n_states: int = 127
    boost_true_positives: bool = False
    max_weight: int = 255
    weighted: bool = False
    epochs: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.T == 0:
            object.__setattr__(self, "T", default_voting_margin(self.n_clauses))
        if self.n_clauses < 2 or self.n_clauses % 2:
            raise ValueError("n_clauses must be a positive even integer")
        if self.T < 1:
            raise ValueError("T must be positive")
        if not self.s > 1.0:
            raise ValueError("s must exceed 1")
        if self.n_states < 1:
            raise ValueError("n_states must be positive")
        if not 1 <= self.max_weight <= 255:
            raise ValueError("max_weight must be in 1..255")
        if self.epochs < 1:
            raise ValueError("epochs must be positive")


@dataclass(frozen=True)
class Literal:
    """A feature or its negation; feature indices are 1-based."""

    feature_index: int
    negated: bool = False

    def column(self, n_features: int) -> int:
        """0-based column in the automaton state matrix."""
        base = self.feature_index - 1
        return base + n_features if self.negated else base

    def __str__(self):
        return f"~x{self.feature_index}" if self.negated else f"x{self.feature_index}"


@dataclass(frozen=True)
class Prediction:
    label: int  # 1 = class one (Black wins), 0 = class zero
    vote_sum: int
    margin: float  # vote_sum / T clamped to [-1, 1]


@dataclass(frozen=True)
class ExportedClause:
    polarity: int
    weight: int
    literals: tuple[Literal, ...]


def action_of(state: int, n_states: int) -> bool:
    """True when the automaton state selects Include (state > N)."""
    if not 1 <= state <= 2 * n_states:
        raise ValueError(f"state {state} outside 1..{2 * n_states}")
    return state > n_states


def clause_polarities(n_clauses: int) -> np.ndarray:
    """+1 for odd 1-based clause positions, -1 for even."""
    pol = np.ones(n_clauses, dtype=np.int8)
    pol[1::2] = -1
    return pol


class ClauseBank:
    """Automaton state matrix plus per-clause weights for one classifier."""

    def __init__(self, config: TMConfig, n_features: int,
                 states: np.ndarray, weights: np.ndarray | None = None):
        n, two_o = states.shape
        if n != config.n_clauses or two_o != 2 * n_features:
            raise ValueError(
                f"state matrix {states.shape} does not match "
                f"{config.n_clauses} clauses x {2 * n_features} literals"
            )
        if states.min() < 1 or states.max() > 2 * config.n_states:
            raise ValueError("automaton states out of range")
        self.config = config
        self.n_features = n_features
        self.states = np.ascontiguousarray(states, dtype=np.uint16)
        if weights is None:
            weights = np.ones(n, dtype=np.int32)
        self.weights = np.ascontiguousarray(weights, dtype=np.int32)
        self.polarity = clause_polarities(n)
        self._include = _kernels.repack_includes(self.states, config.n_states)

    @classmethod
    def create(cls, config: TMConfig, n_features: int,
               rng: np.random.Generator | None = None) -> "ClauseBank":
        """Fresh bank with every automaton on the include/exclude boundary."""
        if rng is None:
            rng = np.random.default_rng(config.seed)
        states = rng.integers(
            config.n_states, config.n_states + 2,
            size=(config.n_clauses, 2 * n_features), dtype=np.uint16,
        )
        return cls(config, n_features, states)

    @property
    def n_clauses(self) -> int:
        return self.config.n_clauses

    # -- inference ---------------------------------------------------------

    def _check_input(self, x) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.uint8)
        if x.shape != (self.n_features,):
            raise ValueError(
                f"expected {self.n_features} feature bits, got shape {x.shape}"
            )
        return x

    def clause_output(self, j: int, x) -> bool:
        """Truth value of clause ``j`` (0-based) on input ``x``."""
        return bool(self.clause_outputs(x)[j])

    def clause_outputs(self, x) -> np.ndarray:
        lit = _kernels.pack_literals(self._check_input(x))
        return _kernels.clause_outputs(self._include, lit)

    def vote_sum(self, x) -> int:
        lit = _kernels.pack_literals(self._check_input(x))
        return int(_kernels.vote_sum(self._include, lit, self.polarity, self.weights))

    def predict(self, x) -> Prediction:
        v = self.vote_sum(x)
        margin = max(-1.0, min(1.0, v / self.config.T))
        return Prediction(label=1 if v >= 0 else 0, vote_sum=v, margin=margin)

    def vote_sums_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=np.uint8)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError(f"expected (*, {self.n_features}) feature matrix")
        packed = _kernels.pack_dataset(X)
        return _kernels.batch_vote_sums(packed=packed, inc=self._include,
                                        polarity=self.polarity, weights=self.weights)

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        return (self.vote_sums_batch(X) >= 0).astype(np.uint8)

    # -- learning ----------------------------------------------------------

    def _feedback_probs(self) -> tuple[float, float]:
        cfg = self.config
        p_keep = 1.0 if cfg.boost_true_positives else (cfg.s - 1.0) / cfg.s
        return p_keep, 1.0 / cfg.s

    def train_example(self, x, y: int, rng: np.random.Generator) -> None:
        """Single online update from one labelled example."""
        x = self._check_input(x)
        cfg = self.config
        p_keep, inv_s = self._feedback_probs()
        o = self.n_features
        _kernels.train_one(
            self.states, self._include, self.polarity, self.weights,
            x, int(y), cfg.T, cfg.n_states,
            p_keep, inv_s,
            p_keep ** o, (1.0 - inv_s) ** o, (1.0 - inv_s) ** (2 * o),
            cfg.weighted, cfg.max_weight, rng,
        )

    def fit(self, X: np.ndarray, labels: np.ndarray,
            rng: np.random.Generator | None = None,
            progress: Callable[[int, float], None] | None = None) -> list[float]:
        """Train for ``config.epochs`` passes over a per-epoch reshuffle.

        Returns the training-set accuracy measured after each epoch;
        ``progress(epoch, accuracy)`` is invoked with the same values.
        """
        X = np.ascontiguousarray(X, dtype=np.uint8)
        labels = np.ascontiguousarray(labels, dtype=np.uint8)
        if len(X) == 0:
            raise ValueError("training dataset is empty")
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError(f"expected (*, {self.n_features}) feature matrix")
        if labels.shape != (len(X),):
            raise ValueError("labels do not match examples")
        if rng is None:
            rng = np.random.default_rng(self.config.seed)
        cfg = self.config
        p_keep, inv_s = self._feedback_probs()
        packed = _kernels.pack_dataset(X)
        trace = []
        for epoch in range(cfg.epochs):
            order = rng.permutation(len(X))
            _kernels.train_epoch(
                self.states, self._include, self.polarity, self.weights,
                X, labels, order, cfg.T, cfg.n_states,
                p_keep, inv_s, cfg.weighted, cfg.max_weight, rng,
            )
            correct = _kernels.count_correct(
                self._include, packed, labels, self.polarity, self.weights,
            )
            trace.append(correct / len(X))
            if progress is not None:
                progress(epoch, trace[-1])
        return trace

    # -- clause introspection ----------------------------------------------

    def included_literals(self, j: int) -> tuple[Literal, ...]:
        o = self.n_features
        cols = np.flatnonzero(self.states[j] > self.config.n_states)
        return tuple(
            Literal(int(c) + 1, False) if c < o else Literal(int(c) - o + 1, True)
            for c in cols
        )

    def export_clauses(self) -> list[ExportedClause]:
        """Lossless clause listing with respect to actions and weights."""
        return [
            ExportedClause(
                polarity=int(self.polarity[j]),
                weight=int(self.weights[j]),
                literals=self.included_literals(j),
            )
            for j in range(self.n_clauses)
        ]


def import_clauses(clauses: list[ExportedClause], config: TMConfig,
                   n_features: int) -> ClauseBank:
    """Bank reconstructed from exported clauses, equivalent for inference.

    Included literals sit at state N+1 and excluded ones at N, so the
    action function reproduces the original clauses exactly.
    """
    if len(clauses) != config.n_clauses:
        raise ValueError(
            f"{len(clauses)} clauses do not match config n_clauses={config.n_clauses}"
        )
    n_states = config.n_states
    states = np.full((len(clauses), 2 * n_features), n_states, dtype=np.uint16)
    weights = np.ones(len(clauses), dtype=np.int32)
    expected_pol = clause_polarities(len(clauses))
    for j, clause in enumerate(clauses):
        if clause.polarity != expected_pol[j]:
            raise ValueError(f"clause {j} polarity {clause.polarity} breaks the "
                             "alternating +/- layout")
        weights[j] = clause.weight
        for lit in clause.literals:
            if not 1 <= lit.feature_index <= n_features:
                raise ValueError(f"literal {lit} out of range for o={n_features}")
            states[j, lit.column(n_features)] = n_states + 1
    return ClauseBank(config, n_features, states, weights)


def feedback_probability(v: int, y: int, T: int) -> float:
    """Per-clause update probability eps/(2T) with v clamped to [-T, T]."""
    if T <= 0:
        raise ValueError("T must be positive")
    v = max(-T, min(T, v))
    eps = T - v if y == 1 else T + v
    return eps / (2.0 * T)


def train(config: TMConfig, X: np.ndarray, labels: np.ndarray,
          progress: Callable[[int, float], None] | None = None,
          ) -> tuple[ClauseBank, list[float]]:
    """Create a bank and fit it, driving all randomness from config.seed."""
    X = np.ascontiguousarray(X, dtype=np.uint8)
    rng = np.random.default_rng(config.seed)
    bank = ClauseBank.create(config, n_features=X.shape[1], rng=rng)
    trace = bank.fit(X, labels, rng=rng, progress=progress)
    return bank, trace
