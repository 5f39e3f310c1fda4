"""Character-level length-controlled decoding over a CTC output lattice.

The decoder is a knapsack-style dynamic program over (slot, length bucket)
cells.  Bucket ``l >= 1`` holds reduced lengths ``alpha*(l-1)+1 .. alpha*l``;
bucket 0 holds the empty summary.  Every cell keeps a single hypothesis and
its exact character length, so the bucket a new word lands in is decided by
the true length rather than the bucket index.

With ``alpha == 1`` and no merging of repeats the table is exact: cell
``(S, l)`` holds the most probable path whose reduction is ``l`` characters
long.  Merging repeats or coarser buckets make it an approximation.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .core import (
    InputError,
    LengthWeights,
    LogProbMatrix,
    Reduction,
    TokenPath,
    Vocabulary,
    WordSequence,
    reduce_path,
    reduced_length,
)

log = logging.getLogger(__name__)

NEG_INF = -math.inf

_WEIGHT_CODES = {LengthWeights.SEPARATOR: 0, LengthWeights.APPENDED: 1, LengthWeights.UNIT: 2}

SELECT_BEST = "best"
SELECT_LONGEST = "longest"


@dataclass(frozen=True)
class DecoderConfig:
    """Decoder hyperparameters.

    ``top_k`` prunes non-blank words per slot; the blank is always a
    candidate.  ``select`` picks the final cell: ``"best"`` maximises over
    every bucket that fits the budget, ``"longest"`` takes the highest
    feasible bucket that is reachable.
    """

    budget_U: int
    bucket_alpha: int = 4
    top_k: int = 20
    variant: Reduction = Reduction.MERGE
    weights: LengthWeights = LengthWeights.SEPARATOR
    inclusive_budget: bool = True
    select: str = SELECT_BEST

    def __post_init__(self):
        object.__setattr__(self, "variant", Reduction.parse(self.variant))
        object.__setattr__(self, "weights", LengthWeights.parse(self.weights))
        if self.budget_U < 0:
            raise InputError("budget must be non-negative")
        if self.bucket_alpha < 1:
            raise InputError("bucket size must be a positive integer")
        if self.top_k < 1:
            raise InputError("top_k must be a positive integer")
        if self.select not in (SELECT_BEST, SELECT_LONGEST):
            raise InputError(f"unknown selection rule {self.select!r}")

    @property
    def max_len(self) -> int:
        """Largest admissible reduced length (-1 if nothing is admissible)."""
        return self.budget_U if self.inclusive_budget else self.budget_U - 1

    @property
    def n_buckets(self) -> int:
        return max(0, -(-self.max_len // self.bucket_alpha))

    def bucket_range(self, l: int) -> tuple[int, int]:
        if l == 0:
            return 0, 0
        return self.bucket_alpha * (l - 1) + 1, self.bucket_alpha * l


@dataclass(frozen=True)
class DPCell:
    score: float
    exact_len: int
    last_token: int
    backpointer: tuple[int, int] | None  # (previous bucket, emitted token)

    @property
    def reachable(self) -> bool:
        return self.score > NEG_INF


@dataclass(frozen=True)
class DecodeResult:
    path: TokenPath
    words: WordSequence
    char_len: int
    score: float
    elapsed: float
    bucket: int | None = None

    @property
    def prob(self) -> float:
        return math.exp(self.score)

    @property
    def text(self) -> str:
        return self.words.text


@dataclass
class DPTable:
    """Filled DP table; rows are slots, columns are length buckets."""

    score: np.ndarray
    length: np.ndarray
    last: np.ndarray
    prev: np.ndarray
    config: DecoderConfig
    vocab: Vocabulary
    matrix: LogProbMatrix = field(repr=False)

    @property
    def S(self) -> int:
        return self.score.shape[0]

    @property
    def n_buckets(self) -> int:
        return self.score.shape[1] - 1

    def cell(self, s: int, l: int) -> DPCell:
        """Cell for 1-based slot ``s`` and bucket ``l``."""
        i = s - 1
        sc = float(self.score[i, l])
        if sc == NEG_INF:
            return DPCell(NEG_INF, 0, -1, None)
        last = int(self.last[i, l])
        bp = (int(self.prev[i, l]), last) if i > 0 else None
        return DPCell(sc, int(self.length[i, l]), last, bp)

    def path(self, l: int, s: int | None = None) -> tuple[int, ...]:
        """Follow backpointers from cell (s, l); ``s`` defaults to the last slot."""
        s = self.S if s is None else s
        if self.score[s - 1, l] == NEG_INF:
            raise ValueError(f"cell ({s}, {l}) is unreachable")
        out = []
        for i in range(s - 1, -1, -1):
            out.append(int(self.last[i, l]))
            l = int(self.prev[i, l])
        return tuple(reversed(out))

    def result(self, l: int, elapsed: float = 0.0) -> DecodeResult:
        path = self.path(l)
        words = reduce_path(path, self.vocab, self.config.variant)
        return DecodeResult(
            path=TokenPath(path),
            words=words,
            char_len=int(self.length[-1, l]),
            score=float(self.score[-1, l]),
            elapsed=elapsed,
            bucket=l,
        )

    def feasible_buckets(self) -> list[int]:
        """Reachable final-slot buckets whose hypothesis fits the budget."""
        limit = self.config.max_len
        return [
            l
            for l in range(self.n_buckets + 1)
            if self.score[-1, l] > NEG_INF and self.length[-1, l] <= limit
        ]

    def select(self) -> int | None:
        feasible = self.feasible_buckets()
        if not feasible:
            return None
        if self.config.select == SELECT_LONGEST:
            return feasible[-1]
        best = feasible[0]
        for l in feasible[1:]:
            if self.score[-1, l] > self.score[-1, best]:
                best = l
        return best


def top_k_candidates(logp: np.ndarray, blank_id: int, k: int) -> np.ndarray:
    """Per-slot ids of the ``k`` most probable non-blank tokens, sorted by id.

    Probability ties are broken towards the smaller id.
    """
    S, V = logp.shape
    k = min(k, V - 1)
    if k <= 0:
        return np.zeros((S, 0), dtype=np.int64)
    order = np.argsort(-logp, axis=1, kind="stable")
    order = order[order != blank_id].reshape(S, V - 1)[:, :k]
    return np.ascontiguousarray(np.sort(order, axis=1), dtype=np.int64)


def fill_table(matrix: LogProbMatrix, vocab: Vocabulary, config: DecoderConfig, backend: str | None = None) -> DPTable:
    matrix.check_vocab(vocab)
    kern = _backend.get(backend)
    cand = top_k_candidates(matrix.values, vocab.blank_id, config.top_k)
    score, length, last, prev = kern.fill_table(
        matrix.values,
        vocab.width_array(),
        vocab.blank_id,
        cand,
        config.bucket_alpha,
        config.n_buckets,
        config.variant is Reduction.MERGE,
        _WEIGHT_CODES[config.weights],
    )
    return DPTable(score, length, last, prev, config, vocab, matrix)


def _empty_result(matrix: LogProbMatrix, vocab: Vocabulary, elapsed: float) -> DecodeResult:
    path = (vocab.blank_id,) * matrix.S
    return DecodeResult(
        path=TokenPath(path),
        words=WordSequence((), ""),
        char_len=0,
        score=matrix.path_score(path),
        elapsed=elapsed,
        bucket=0,
    )


def decode_length_control(
    matrix: LogProbMatrix, vocab: Vocabulary, config: DecoderConfig, backend: str | None = None
) -> DecodeResult:
    """Most probable path (approximately) whose reduction fits the budget.

    Falls back to the all-blank path when no bucket within budget is
    reachable.
    """
    t0 = time.perf_counter()
    table = fill_table(matrix, vocab, config, backend)
    l = table.select()
    if l is None:
        elapsed = time.perf_counter() - t0
        log.warning("no hypothesis fits budget %d; returning the empty summary", config.budget_U)
        return _empty_result(matrix, vocab, elapsed)
    res = table.result(l)
    elapsed = time.perf_counter() - t0
    return DecodeResult(res.path, res.words, res.char_len, res.score, elapsed, l)


def exact_config(budget_U: int, weights=LengthWeights.SEPARATOR, vocab_size: int = 1, inclusive: bool = True) -> DecoderConfig:
    """Configuration under which the DP is provably optimal."""
    return DecoderConfig(
        budget_U=budget_U,
        bucket_alpha=1,
        top_k=max(1, vocab_size - 1),
        variant=Reduction.NOMERGE,
        weights=weights,
        inclusive_budget=inclusive,
    )


def decode_exact(
    matrix: LogProbMatrix,
    vocab: Vocabulary,
    budget_U: int,
    weights=LengthWeights.SEPARATOR,
    inclusive: bool = True,
    backend: str | None = None,
) -> DecodeResult:
    """Optimal path under no-merge reduction with reduced length within budget."""
    config = exact_config(budget_U, weights, len(vocab), inclusive)
    return decode_length_control(matrix, vocab, config, backend)


def decode_greedy(matrix: LogProbMatrix, vocab: Vocabulary, reduction=Reduction.MERGE, weights=LengthWeights.SEPARATOR) -> DecodeResult:
    """Per-slot argmax followed by reduction; no length guarantee."""
    t0 = time.perf_counter()
    matrix.check_vocab(vocab)
    path = tuple(int(t) for t in np.argmax(matrix.values, axis=1))
    words = reduce_path(path, vocab, reduction)
    score = matrix.path_score(path)
    return DecodeResult(
        TokenPath(path), words, reduced_length(words, weights, vocab), score, time.perf_counter() - t0
    )


def truncate(words: WordSequence, budget_U: int, weights=LengthWeights.SEPARATOR, mode: str = "word") -> WordSequence:
    """Cut a summary down to the budget after the fact.

    ``"char"`` slices the rendered text to ``budget_U`` characters and may
    split a word; ``words`` then keeps only the words that survive intact.
    ``"word"`` drops trailing words until the reduced length fits.
    """
    weights = LengthWeights.parse(weights)
    parts = words.text.split(" ") if words.text else []
    mode = mode.lower()
    if mode == "char":
        text = words.text[: max(0, budget_U)]
        if text == words.text:
            return words
        n = len(text.split(" ")) - 1 if text else 0
        if text and len(text.split(" ")[-1]) == len(parts[n]):
            n += 1
        return WordSequence(words.words[:n], text)
    if mode != "word":
        raise InputError(f"unknown truncation mode {mode!r}")

    def length(n):
        total = 0
        for p in parts[:n]:
            total += weights.increment(len(p), total)
        return total

    n = len(parts)
    while n > 0 and length(n) > budget_U:
        n -= 1
    if n == len(parts):
        return words
    return WordSequence(words.words[:n], " ".join(parts[:n]))
