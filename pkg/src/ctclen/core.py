"""Domain types and the two CTC reduction operators.

A decode operates on a ``LogProbMatrix`` (one row of natural-log token
probabilities per prediction slot) and a ``Vocabulary`` that knows which
token is the blank and how wide every token is in characters.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class InputError(ValueError):
    """Raised for malformed user input (bad token ids, broken files, ...)."""


class LengthWeights(enum.Enum):
    """How the character length of a reduced word sequence is counted."""

    SEPARATOR = "separator"  # words joined by single spaces
    APPENDED = "appended"  # every word carries one trailing space
    UNIT = "unit"  # one per word, i.e. word-count control

    @classmethod
    def parse(cls, value: "str | LengthWeights") -> "LengthWeights":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(f"unknown length convention {value!r}") from None

    def increment(self, width: int, current_len: int) -> int:
        """Characters added when a word of ``width`` joins a hypothesis
        whose reduced length is ``current_len``."""
        if self is LengthWeights.SEPARATOR:
            return width + 1 if current_len > 0 else width
        if self is LengthWeights.APPENDED:
            return width + 1
        return 1


class Reduction(enum.Enum):
    MERGE = "merge"
    NOMERGE = "nomerge"

    @classmethod
    def parse(cls, value: "str | Reduction") -> "Reduction":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(f"unknown reduction {value!r}") from None


@dataclass(frozen=True)
class Vocabulary:
    """Ordered token table with a distinguished blank.

    Widths are derived from the token strings (Unicode code points); the
    blank always has width 0.
    """

    tokens: tuple[str, ...]
    blank_id: int
    widths: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        tokens = tuple(self.tokens)
        object.__setattr__(self, "tokens", tokens)
        if len(set(tokens)) != len(tokens):
            raise InputError("vocabulary tokens must be unique")
        if not 0 <= self.blank_id < len(tokens):
            raise InputError(f"blank id {self.blank_id} out of range for {len(tokens)} tokens")
        widths = []
        for i, tok in enumerate(tokens):
            if i == self.blank_id:
                widths.append(0)
            elif len(tok) == 0:
                raise InputError("non-blank tokens must be non-empty")
            else:
                widths.append(len(tok))
        object.__setattr__(self, "widths", tuple(widths))

    @classmethod
    def from_tokens(cls, tokens: Iterable[str], blank: str) -> "Vocabulary":
        tokens = tuple(tokens)
        if blank not in tokens:
            raise InputError(f"blank token {blank!r} is not in the vocabulary")
        return cls(tokens, tokens.index(blank))

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def blank(self) -> str:
        return self.tokens[self.blank_id]

    def id_of(self, token: str) -> int:
        try:
            return self.tokens.index(token)
        except ValueError:
            raise InputError(f"token {token!r} is not in the vocabulary") from None

    def encode(self, text: str) -> tuple[int, ...]:
        """Map whitespace-separated words to non-blank token ids."""
        missing = [w for w in text.split() if w not in self.tokens]
        if missing:
            raise InputError("out-of-vocabulary word(s): " + ", ".join(missing))
        ids = tuple(self.tokens.index(w) for w in text.split())
        if self.blank_id in ids:
            raise InputError("target may not contain the blank token")
        return ids

    def check_ids(self, ids: Iterable[int]) -> None:
        n = len(self.tokens)
        for t in ids:
            if not 0 <= int(t) < n:
                raise InputError(f"token id {t} out of range [0, {n})")

    def width_array(self) -> np.ndarray:
        return np.asarray(self.widths, dtype=np.int64)


@dataclass(frozen=True)
class LogProbMatrix:
    """S x V matrix of per-slot natural-log token probabilities."""

    values: np.ndarray
    atol: float = 1e-6

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64, order="C")
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise InputError(f"log-prob matrix must be 2-D and non-empty, got shape {v.shape}")
        if np.isnan(v).any() or np.isposinf(v).any():
            raise InputError("log-probs must be finite or -inf")
        sums = np.exp(v).sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > self.atol)
        if bad.size:
            raise InputError(f"row {int(bad[0])} does not normalise (sum={sums[bad[0]]!r})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_probs(cls, probs) -> "LogProbMatrix":
        with np.errstate(divide="ignore"):
            return cls(np.log(np.asarray(probs, dtype=np.float64)))

    @property
    def S(self) -> int:
        return self.values.shape[0]

    @property
    def V(self) -> int:
        return self.values.shape[1]

    def check_vocab(self, vocab: Vocabulary) -> None:
        if len(vocab) != self.V:
            raise InputError(f"matrix has {self.V} columns but vocabulary has {len(vocab)} tokens")

    def path_score(self, path: Sequence[int]) -> float:
        return float(sum(self.values[s, t] for s, t in enumerate(path)))


@dataclass(frozen=True)
class TokenPath:
    slots: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.slots)

    def __iter__(self):
        return iter(self.slots)


@dataclass(frozen=True)
class WordSequence:
    words: tuple[int, ...]
    text: str

    @classmethod
    def from_ids(cls, ids: Iterable[int], vocab: Vocabulary) -> "WordSequence":
        ids = tuple(int(i) for i in ids)
        vocab.check_ids(ids)
        if vocab.blank_id in ids:
            raise InputError("word sequences cannot contain the blank token")
        return cls(ids, " ".join(vocab.tokens[i] for i in ids))

    def __len__(self) -> int:
        return len(self.words)


def _as_ids(path) -> tuple[int, ...]:
    if isinstance(path, TokenPath):
        return path.slots
    return tuple(int(t) for t in path)


def reduce_merge(path, vocab: Vocabulary) -> WordSequence:
    """CTC reduction: merge adjacent repeats, then drop blanks."""
    ids = _as_ids(path)
    vocab.check_ids(ids)
    out = []
    prev = None
    for t in ids:
        if t != vocab.blank_id and t != prev:
            out.append(t)
        prev = t
    return WordSequence(tuple(out), " ".join(vocab.tokens[i] for i in out))


def reduce_nomerge(path, vocab: Vocabulary) -> WordSequence:
    """Drop blanks only; repeated tokens survive."""
    ids = _as_ids(path)
    vocab.check_ids(ids)
    out = tuple(t for t in ids if t != vocab.blank_id)
    return WordSequence(out, " ".join(vocab.tokens[i] for i in out))


def reduce_path(path, vocab: Vocabulary, reduction: "Reduction | str") -> WordSequence:
    if Reduction.parse(reduction) is Reduction.MERGE:
        return reduce_merge(path, vocab)
    return reduce_nomerge(path, vocab)


def reduced_length(words, weights: "LengthWeights | str", vocab: Vocabulary) -> int:
    """Character length of a word sequence under the given convention.

    ``words`` may be a ``WordSequence``, token ids or token strings.
    """
    weights = LengthWeights.parse(weights)
    if isinstance(words, WordSequence):
        ids = words.words
    else:
        ids = tuple(vocab.id_of(w) if isinstance(w, str) else int(w) for w in words)
    total = 0
    for t in ids:
        total += weights.increment(vocab.widths[t], total)
    return total
