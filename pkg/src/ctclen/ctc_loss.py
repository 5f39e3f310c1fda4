"""CTC marginal likelihood of a word sequence, plus an enumeration oracle."""
from __future__ import annotations

import itertools
import math

import numpy as np

from . import _backend
from .core import LogProbMatrix, Reduction, Vocabulary, WordSequence, reduce_path

DEFAULT_ENUM_CAP = 10**7


class EnumerationTooLarge(ValueError):
    """The V**S path space exceeds the configured enumeration cap."""


def _target_ids(target, vocab: Vocabulary) -> tuple[int, ...]:
    if isinstance(target, WordSequence):
        ids = target.words
    elif isinstance(target, str):
        ids = vocab.encode(target)
    else:
        ids = tuple(int(t) for t in target)
    return WordSequence.from_ids(ids, vocab).words


def ctc_forward(matrix: LogProbMatrix, target, vocab: Vocabulary, backend: str | None = None) -> float:
    """log P(target | x), summed over every path that CTC-reduces to ``target``.

    Runs the forward recursion over the blank-interleaved target. Returns
    ``-inf`` when no path of ``S`` slots can produce the target.
    """
    matrix.check_vocab(vocab)
    ids = _target_ids(target, vocab)
    blank = vocab.blank_id
    if not ids:
        return float(matrix.values[:, blank].sum())
    repeats = sum(1 for a, b in zip(ids, ids[1:]) if a == b)
    if len(ids) + repeats > matrix.S:
        return -math.inf
    ext = [blank]
    for t in ids:
        ext += [t, blank]
    return float(_backend.get(backend).ctc_forward(matrix.values, np.asarray(ext, dtype=np.int64), blank))


def check_enumerable(matrix: LogProbMatrix, cap: int = DEFAULT_ENUM_CAP) -> None:
    n = matrix.V**matrix.S
    if n > cap:
        raise EnumerationTooLarge(f"{matrix.V}**{matrix.S} = {n} paths exceeds the cap of {cap}")


def brute_distribution(matrix: LogProbMatrix, vocab: Vocabulary, reduction="merge", cap: int = DEFAULT_ENUM_CAP) -> dict[tuple[int, ...], float]:
    """Log-probability of every producible word sequence, by enumerating paths."""
    check_enumerable(matrix, cap)
    matrix.check_vocab(vocab)
    reduction = Reduction.parse(reduction)
    lp = matrix.values
    buckets: dict[tuple[int, ...], list[float]] = {}
    for path in itertools.product(range(matrix.V), repeat=matrix.S):
        score = math.fsum(lp[s, t] for s, t in enumerate(path))
        if score == -math.inf:
            continue
        key = reduce_path(path, vocab, reduction).words
        buckets.setdefault(key, []).append(score)
    return {k: float(np.logaddexp.reduce(v)) for k, v in buckets.items()}


def brute_marginal(matrix: LogProbMatrix, target, vocab: Vocabulary, reduction="merge", cap: int = DEFAULT_ENUM_CAP) -> float:
    """Sum of path probabilities reducing to ``target``, by exhaustive enumeration."""
    ids = _target_ids(target, vocab)
    return brute_distribution(matrix, vocab, reduction, cap).get(ids, -math.inf)
