"""ROUGE-1/2/L without stemming or stopword removal.

Text is lowercased and split on whitespace.  Scores are fractions in
[0, 1]; an empty candidate or reference scores zero everywhere.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import InputError

MODES = ("f1", "recall", "precision")


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, overlap: int, n_cand: int, n_ref: int) -> "PRF":
        p = overlap / n_cand if n_cand else 0.0
        r = overlap / n_ref if n_ref else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(p, r, f)

    def get(self, mode: str) -> float:
        return getattr(self, _mode(mode))


@dataclass(frozen=True)
class RougeScore:
    r1: PRF
    r2: PRF
    rl: PRF

    def values(self, mode: str = "f1") -> tuple[float, float, float]:
        return self.r1.get(mode), self.r2.get(mode), self.rl.get(mode)


def _mode(mode: str) -> str:
    m = mode.lower()
    if m == "f":
        m = "f1"
    if m not in MODES:
        raise InputError(f"unknown ROUGE mode {mode!r}")
    return m


def tokenize(text) -> list[str]:
    if isinstance(text, str):
        return text.lower().split()
    return [t.lower() for t in text]


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge_n(cand: Sequence[str], ref: Sequence[str], n: int) -> PRF:
    c, r = ngrams(cand, n), ngrams(ref, n)
    overlap = sum((c & r).values())
    return PRF.from_counts(overlap, sum(c.values()), sum(r.values()))


def rouge(candidate, reference) -> RougeScore:
    """ROUGE-1, ROUGE-2 and ROUGE-L of one candidate against one reference."""
    cand, ref = tokenize(candidate), tokenize(reference)
    lcs = lcs_length(cand, ref)
    return RougeScore(
        rouge_n(cand, ref, 1),
        rouge_n(cand, ref, 2),
        PRF.from_counts(lcs, len(cand), len(ref)),
    )


def _mean(xs: list[PRF]) -> PRF:
    n = len(xs)
    return PRF(
        sum(x.precision for x in xs) / n,
        sum(x.recall for x in xs) / n,
        sum(x.f1 for x in xs) / n,
    )


@dataclass(frozen=True)
class CorpusRouge:
    mode: str
    mean: RougeScore
    per_pair: tuple[RougeScore, ...]

    @property
    def r1(self) -> float:
        return self.mean.r1.get(self.mode)

    @property
    def r2(self) -> float:
        return self.mean.r2.get(self.mode)

    @property
    def rl(self) -> float:
        return self.mean.rl.get(self.mode)


def corpus_rouge(pairs: Iterable[tuple[object, object]], mode: str = "f1") -> CorpusRouge:
    """Per-pair average of ROUGE scores; ``mode`` picks the reported figure."""
    mode = _mode(mode)
    scores = tuple(rouge(c, r) for c, r in pairs)
    if not scores:
        raise InputError("corpus_rouge needs at least one pair")
    mean = RougeScore(
        _mean([s.r1 for s in scores]),
        _mean([s.r2 for s in scores]),
        _mean([s.rl for s in scores]),
    )
    return CorpusRouge(mode, mean, scores)
