"""Exhaustive constrained decoder used as ground truth on small instances.

Every one of the V**S paths is scored and its reduced length computed, so
the result does not depend on any of the DP's bookkeeping.  Ties go to the
lexicographically smallest path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import LengthWeights, LogProbMatrix, Reduction, TokenPath, Vocabulary, WordSequence, reduce_path
from .ctc_loss import DEFAULT_ENUM_CAP, check_enumerable

CHUNK = 1 << 18


@dataclass(frozen=True)
class OracleResult:
    best_path: TokenPath
    best_words: WordSequence
    best_score: float
    feasible: bool
    char_len: int = 0


def _enumerate(matrix: LogProbMatrix, vocab: Vocabulary, weights: LengthWeights, reduction: Reduction):
    """Yield ``(first_index, scores, lengths)`` chunks in lexicographic path order."""
    S, V = matrix.S, matrix.V
    lp = matrix.values
    widths = vocab.width_array()
    blank = vocab.blank_id
    merge = reduction is Reduction.MERGE
    total = V**S
    powers = [V ** (S - 1 - s) for s in range(S)]
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        scores = np.zeros(idx.size)
        lengths = np.zeros(idx.size, dtype=np.int64)
        prev = np.full(idx.size, -1, dtype=np.int64)
        for s in range(S):
            tok = (idx // powers[s]) % V
            scores += lp[s, tok]
            new_word = tok != blank
            if merge:
                new_word &= tok != prev
            if weights is LengthWeights.SEPARATOR:
                inc = widths[tok] + (lengths > 0)
            elif weights is LengthWeights.APPENDED:
                inc = widths[tok] + 1
            else:
                inc = np.ones_like(tok)
            lengths += np.where(new_word, inc, 0)
            prev = tok
        yield start, scores, lengths


def _path_of(index: int, S: int, V: int) -> tuple[int, ...]:
    out = []
    for _ in range(S):
        out.append(index % V)
        index //= V
    return tuple(reversed(out))


def brute_by_length(matrix: LogProbMatrix, vocab: Vocabulary, weights="separator", reduction="nomerge", cap: int = DEFAULT_ENUM_CAP) -> dict[int, tuple[float, tuple[int, ...]]]:
    """Best score and path for every reduced length that some path attains."""
    check_enumerable(matrix, cap)
    matrix.check_vocab(vocab)
    weights, reduction = LengthWeights.parse(weights), Reduction.parse(reduction)
    best: dict[int, tuple[float, int]] = {}
    for start, scores, lengths in _enumerate(matrix, vocab, weights, reduction):
        for n in np.unique(lengths):
            sel = np.flatnonzero(lengths == n)
            j = sel[np.argmax(scores[sel])]
            cand = (float(scores[j]), start + int(j))
            n = int(n)
            if n not in best or cand[0] > best[n][0]:
                best[n] = cand
    return {n: (sc, _path_of(i, matrix.S, matrix.V)) for n, (sc, i) in sorted(best.items())}


def brute_decode(
    matrix: LogProbMatrix,
    vocab: Vocabulary,
    budget_U: int,
    weights="separator",
    reduction="merge",
    inclusive: bool = True,
    cap: int = DEFAULT_ENUM_CAP,
    min_len: int = 0,
) -> OracleResult:
    """Highest-scoring path whose reduced length is within the budget.

    ``min_len`` additionally imposes a lower bound, which lets callers ask
    for the optimum inside one length bucket.
    """
    check_enumerable(matrix, cap)
    matrix.check_vocab(vocab)
    weights, reduction = LengthWeights.parse(weights), Reduction.parse(reduction)
    limit = budget_U if inclusive else budget_U - 1
    found = None  # (score, index, length)
    for start, scores, lengths in _enumerate(matrix, vocab, weights, reduction):
        sel = np.flatnonzero((lengths <= limit) & (lengths >= min_len))
        if sel.size == 0:
            continue
        j = sel[np.argmax(scores[sel])]
        if found is None or scores[j] > found[0]:
            found = (float(scores[j]), start + int(j), int(lengths[j]))
    if found is None:
        return OracleResult(TokenPath(()), WordSequence((), ""), -math.inf, False)
    path = _path_of(found[1], matrix.S, matrix.V)
    words = reduce_path(path, vocab, reduction)
    return OracleResult(TokenPath(path), words, matrix.path_score(path), True, found[2])


def gap_report(matrix: LogProbMatrix, vocab: Vocabulary, config, cap: int = DEFAULT_ENUM_CAP, backend: str | None = None) -> tuple[float, float, float]:
    """``(dp_score, oracle_score, oracle_score - dp_score)`` under one config."""
    from .lenctl import decode_length_control

    oracle = brute_decode(
        matrix, vocab, config.budget_U, config.weights, config.variant, config.inclusive_budget, cap
    )
    dp = decode_length_control(matrix, vocab, config, backend)
    if not oracle.feasible:
        return dp.score, -math.inf, 0.0
    if dp.score == oracle.best_score:
        return dp.score, oracle.best_score, 0.0
    return dp.score, oracle.best_score, oracle.best_score - dp.score
