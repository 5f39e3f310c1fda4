"""Seeded synthetic instances: Dirichlet rows over made-up words."""
from __future__ import annotations

import numpy as np

from .core import LogProbMatrix, Vocabulary

BLANK = "<b>"
_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st", "tr"]
_VOWELS = ["a", "e", "i", "o", "u"]


def _word(rng: np.random.Generator, width: int) -> str:
    out = ""
    while len(out) < width:
        out += rng.choice(_ONSETS) + rng.choice(_VOWELS)
    return out[:width]


def make_vocab(n_words: int, rng: np.random.Generator, min_width: int = 1, max_width: int = 12) -> Vocabulary:
    """Blank at id 0 followed by ``n_words`` distinct pronounceable words."""
    words: list[str] = []
    seen = {BLANK}
    while len(words) < n_words:
        w = _word(rng, int(rng.integers(min_width, max_width + 1)))
        if w not in seen:
            seen.add(w)
            words.append(w)
    return Vocabulary((BLANK, *words), 0)


def random_instance(slots: int, vocab_size: int, seed: int, peakedness: float = 1.0) -> tuple[LogProbMatrix, Vocabulary]:
    """``vocab_size`` counts the blank. Larger ``peakedness`` gives spikier rows."""
    if slots < 1 or vocab_size < 2:
        raise ValueError("need at least one slot and one non-blank word")
    if peakedness <= 0:
        raise ValueError("peakedness must be positive")
    rng = np.random.default_rng(seed)
    vocab = make_vocab(vocab_size - 1, rng)
    probs = rng.dirichlet(np.full(vocab_size, 1.0 / peakedness), size=slots)
    probs /= probs.sum(axis=1, keepdims=True)
    return LogProbMatrix.from_probs(probs), vocab


def small_instance(rng: np.random.Generator, max_slots: int, max_vocab: int, min_vocab: int = 2):
    """Random tiny instance for oracle comparisons; widths 1..3 keep lengths collide-prone."""
    S = int(rng.integers(1, max_slots + 1))
    V = int(rng.integers(min_vocab, max_vocab + 1))
    vocab = make_vocab(V - 1, rng, 1, 3)
    probs = rng.dirichlet(np.ones(V), size=S)
    probs /= probs.sum(axis=1, keepdims=True)
    return LogProbMatrix.from_probs(probs), vocab
