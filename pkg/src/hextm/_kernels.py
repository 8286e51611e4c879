"""Numba-compiled inner loops for clause evaluation and automaton updates.

Clause include/exclude decisions are mirrored into packed uint64 bitmasks so
that evaluating a clause against an input costs a handful of word operations:
a clause fires iff ``include & ~literals == 0`` across all words. The
training kernels keep the masks in sync with the automaton state matrix.

Stochastic cell updates draw a Binomial count for the number of affected
cells and then a uniform subset of positions, which reproduces the joint
distribution of independent per-cell Bernoulli draws exactly while doing
O(np) work instead of O(n).

All randomness flows through a ``numpy.random.Generator`` passed in by the
caller, so seeded runs are reproducible bit for bit.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64_ONE = np.uint64(1)
U64_ZERO = np.uint64(0)


@njit(cache=True, inline="always")
def _set_bit(words, row, col):
    words[row, col >> 6] |= U64_ONE << np.uint64(col & 63)


@njit(cache=True, inline="always")
def _clear_bit(words, row, col):
    words[row, col >> 6] &= ~(U64_ONE << np.uint64(col & 63))


@njit(cache=True)
def pack_literals(x):
    """Literal truth words for input bits ``x``: columns 0..o-1 are the
    features, columns o..2o-1 their negations."""
    o = x.shape[0]
    n_words = (2 * o + 63) // 64
    words = np.zeros(n_words, dtype=np.uint64)
    for k in range(o):
        if x[k]:
            words[k >> 6] |= U64_ONE << np.uint64(k & 63)
        else:
            c = o + k
            words[c >> 6] |= U64_ONE << np.uint64(c & 63)
    return words


@njit(cache=True)
def pack_dataset(X):
    """Literal words for every row of a 0/1 feature matrix."""
    n_rows, o = X.shape
    n_words = (2 * o + 63) // 64
    packed = np.zeros((n_rows, n_words), dtype=np.uint64)
    for e in range(n_rows):
        for k in range(o):
            if X[e, k]:
                packed[e, k >> 6] |= U64_ONE << np.uint64(k & 63)
            else:
                c = o + k
                packed[e, c >> 6] |= U64_ONE << np.uint64(c & 63)
    return packed


@njit(cache=True)
def repack_includes(states, n_states):
    """Packed include masks derived from the automaton state matrix."""
    n, two_o = states.shape
    n_words = (two_o + 63) // 64
    inc = np.zeros((n, n_words), dtype=np.uint64)
    for j in range(n):
        for c in range(two_o):
            if states[j, c] > n_states:
                inc[j, c >> 6] |= U64_ONE << np.uint64(c & 63)
    return inc


@njit(cache=True)
def clause_outputs(inc, lit_words):
    """Per-clause truth values against packed literal words."""
    n, n_words = inc.shape
    out = np.empty(n, dtype=np.uint8)
    for j in range(n):
        fired = 1
        for w in range(n_words):
            if inc[j, w] & ~lit_words[w]:
                fired = 0
                break
        out[j] = fired
    return out


@njit(cache=True)
def vote_sum(inc, lit_words, polarity, weights):
    n, n_words = inc.shape
    v = 0
    for j in range(n):
        fired = True
        for w in range(n_words):
            if inc[j, w] & ~lit_words[w]:
                fired = False
                break
        if fired:
            v += polarity[j] * weights[j]
    return v


@njit(cache=True)
def batch_vote_sums(inc, packed, polarity, weights):
    n_rows = packed.shape[0]
    out = np.empty(n_rows, dtype=np.int64)
    for e in range(n_rows):
        out[e] = vote_sum(inc, packed[e], polarity, weights)
    return out


@njit(cache=True, inline="always")
def _binomial(rng, n, p, pmf0):
    """Exact Binomial(n, p) by CDF inversion; ``pmf0`` is (1-p)**n."""
    if p <= 0.0:
        return 0
    if p >= 1.0:
        return n
    u = rng.random()
    pmf = pmf0
    cdf = pmf0
    k = 0
    ratio = p / (1.0 - p)
    while u > cdf and k < n:
        k += 1
        pmf *= ratio * (n - k + 1) / k
        cdf += pmf
    return k


@njit(cache=True, inline="always")
def _sample_distinct(rng, k, m, out):
    """Floyd's sampling of k distinct integers from [0, m) into ``out``."""
    count = 0
    for j in range(m - k, m):
        t = int(rng.integers(0, j + 1))
        dup = False
        for i in range(count):
            if out[i] == t:
                dup = True
                break
        out[count] = j if dup else t
        count += 1


@njit(cache=True)
def type_i_row(states, inc, j, fired, true_idx, false_idx, n_states,
               p_keep, inv_s, pmf0_skip, pmf0_del_o, pmf0_del_2o, rng, scratch):
    """Type I feedback for clause row ``j``.

    Fired clause: every true literal's automaton steps toward Include with
    probability ``p_keep``; every false literal's automaton steps toward
    Exclude with probability 1/s when it currently excludes (an including
    automaton under a false literal gets no update). Unfired clause: every
    cell steps toward Exclude with probability 1/s.
    """
    o = true_idx.shape[0]
    two_n = 2 * n_states
    if fired:
        skip = _binomial(rng, o, 1.0 - p_keep, pmf0_skip)
        if skip == 0:
            for i in range(o):
                c = true_idx[i]
                st = states[j, c]
                if st < two_n:
                    states[j, c] = st + 1
                    if st == n_states:
                        _set_bit(inc, j, c)
        else:
            _sample_distinct(rng, skip, o, scratch)
            for i in range(o):
                skipped = False
                for q in range(skip):
                    if scratch[q] == i:
                        skipped = True
                        break
                if skipped:
                    continue
                c = true_idx[i]
                st = states[j, c]
                if st < two_n:
                    states[j, c] = st + 1
                    if st == n_states:
                        _set_bit(inc, j, c)
        down = _binomial(rng, o, inv_s, pmf0_del_o)
        if down:
            _sample_distinct(rng, down, o, scratch)
            for i in range(down):
                c = false_idx[scratch[i]]
                st = states[j, c]
                if st <= n_states and st > 1:
                    states[j, c] = st - 1
    else:
        two_o = 2 * o
        down = _binomial(rng, two_o, inv_s, pmf0_del_2o)
        if down:
            _sample_distinct(rng, down, two_o, scratch)
            for i in range(down):
                c = scratch[i]
                st = states[j, c]
                if st > 1:
                    states[j, c] = st - 1
                    if st == n_states + 1:
                        _clear_bit(inc, j, c)


@njit(cache=True)
def type_ii_row(states, inc, j, fired, false_idx, n_states):
    """Type II feedback for clause row ``j``: deterministically push every
    excluding automaton under a false literal one step toward Include.
    Unfired clauses receive no update."""
    if not fired:
        return
    o = false_idx.shape[0]
    for i in range(o):
        c = false_idx[i]
        st = states[j, c]
        if st <= n_states:
            states[j, c] = st + 1
            if st == n_states:
                _set_bit(inc, j, c)


@njit(cache=True)
def train_one(states, inc, polarity, weights, x, y, T, n_states,
              p_keep, inv_s, pmf0_skip, pmf0_del_o, pmf0_del_2o,
              weighted, max_weight, rng):
    """One online update: evaluate, select clauses with probability
    eps/(2T), then hand out Type I or Type II feedback by polarity."""
    o = x.shape[0]
    n = states.shape[0]

    lit_words = pack_literals(x)
    true_idx = np.empty(o, dtype=np.int64)
    false_idx = np.empty(o, dtype=np.int64)
    for k in range(o):
        if x[k]:
            true_idx[k] = k
            false_idx[k] = o + k
        else:
            true_idx[k] = o + k
            false_idx[k] = k
    scratch = np.empty(2 * o, dtype=np.int64)

    fired = clause_outputs(inc, lit_words)
    v = 0
    for j in range(n):
        if fired[j]:
            v += polarity[j] * weights[j]
    if v > T:
        v = T
    elif v < -T:
        v = -T
    if y == 1:
        p_feedback = (T - v) / (2.0 * T)
    else:
        p_feedback = (T + v) / (2.0 * T)

    for j in range(n):
        if rng.random() >= p_feedback:
            continue
        if (polarity[j] > 0) == (y == 1):
            type_i_row(states, inc, j, fired[j], true_idx, false_idx, n_states,
                       p_keep, inv_s, pmf0_skip, pmf0_del_o, pmf0_del_2o,
                       rng, scratch)
            if weighted and fired[j] and weights[j] < max_weight:
                weights[j] += 1
        else:
            type_ii_row(states, inc, j, fired[j], false_idx, n_states)
            if weighted and fired[j] and weights[j] > 1:
                weights[j] -= 1
    return v


@njit(cache=True)
def train_epoch(states, inc, polarity, weights, X, labels, order, T, n_states,
                p_keep, inv_s, weighted, max_weight, rng):
    o = X.shape[1]
    pmf0_skip = p_keep ** o
    pmf0_del_o = (1.0 - inv_s) ** o
    pmf0_del_2o = (1.0 - inv_s) ** (2 * o)
    for i in range(order.shape[0]):
        e = order[i]
        train_one(states, inc, polarity, weights, X[e], labels[e], T, n_states,
                  p_keep, inv_s, pmf0_skip, pmf0_del_o, pmf0_del_2o,
                  weighted, max_weight, rng)


@njit(cache=True)
def count_correct(inc, packed, labels, polarity, weights):
    n_rows = packed.shape[0]
    correct = 0
    for e in range(n_rows):
        v = vote_sum(inc, packed[e], polarity, weights)
        label = 1 if v >= 0 else 0
        if label == labels[e]:
            correct += 1
    return correct


@njit(cache=True)
def clause_stat_counts(inc, packed, labels, polarity):
    """Per-clause TP/FP/FN against that clause's target class (label 1 for
    positive polarity, label 0 for negative)."""
    n = inc.shape[0]
    n_rows = packed.shape[0]
    tp = np.zeros(n, dtype=np.int64)
    fp = np.zeros(n, dtype=np.int64)
    fn = np.zeros(n, dtype=np.int64)
    for e in range(n_rows):
        fired = clause_outputs(inc, packed[e])
        for j in range(n):
            target = 1 if polarity[j] > 0 else 0
            if fired[j]:
                if labels[e] == target:
                    tp[j] += 1
                else:
                    fp[j] += 1
            elif labels[e] == target:
                fn[j] += 1
    return tp, fp, fn
