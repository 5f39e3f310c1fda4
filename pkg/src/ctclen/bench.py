"""Decode-time / objective sweep over bucket sizes and budgets."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .ctc_loss import EnumerationTooLarge
from .lenctl import DecoderConfig, decode_length_control
from .oracle import brute_decode
from .synth import random_instance

COLUMNS = ("alpha", "budget", "slots", "vocab", "top_k", "mean_time_s", "mean_score", "mean_gap", "gap_count")


@dataclass
class BenchRow:
    alpha: int
    budget: int
    slots: int
    vocab: int
    top_k: int
    mean_time_s: float
    mean_score: float
    mean_gap: float | None
    gap_count: int

    def csv(self, with_time: bool = True) -> str:
        gap = "" if self.mean_gap is None else repr(self.mean_gap)
        t = repr(self.mean_time_s) if with_time else ""
        return ",".join(
            [str(self.alpha), str(self.budget), str(self.slots), str(self.vocab), str(self.top_k), t, repr(self.mean_score), gap, str(self.gap_count)]
        )


def _timed(fn, repeats: int):
    best = math.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def run_bench(
    alphas=(1, 2, 4, 8),
    budgets=(50,),
    instances: int = 200,
    seed: int = 0,
    slots: int = 64,
    vocab_size: int = 50,
    top_k: int = 20,
    variant="merge",
    weights="separator",
    peakedness: float = 1.0,
    oracle_max_size: int = 0,
    backend: str | None = None,
    repeats: int = 3,
) -> list[BenchRow]:
    """Decode ``instances`` seeded matrices under every (alpha, budget) pair.

    Time per decode is the fastest of ``repeats`` runs (decode only, no
    generation or IO); configurations are interleaved per instance so slow
    drift in machine load hits them all alike.  The oracle runs only when
    ``vocab_size ** slots <= oracle_max_size``.
    """
    configs = [
        DecoderConfig(budget_U=u, bucket_alpha=a, top_k=top_k, variant=variant, weights=weights)
        for a in alphas
        for u in budgets
    ]
    n = len(configs)
    times = [0.0] * n
    scores = [0.0] * n
    gaps: list[list[float]] = [[] for _ in range(n)]
    use_oracle = oracle_max_size > 0 and vocab_size**slots <= oracle_max_size

    warm_matrix, warm_vocab = random_instance(slots, vocab_size, seed, peakedness)
    for cfg in configs:
        decode_length_control(warm_matrix, warm_vocab, cfg, backend)

    for i in range(instances):
        matrix, vocab = random_instance(slots, vocab_size, seed + i, peakedness)
        for j, cfg in enumerate(configs):
            res, dt = _timed(lambda: decode_length_control(matrix, vocab, cfg, backend), repeats)
            times[j] += dt
            scores[j] += res.score
            if use_oracle:
                try:
                    orc = brute_decode(matrix, vocab, cfg.budget_U, cfg.weights, cfg.variant, cfg.inclusive_budget, oracle_max_size)
                except EnumerationTooLarge:
                    continue
                gaps[j].append(0.0 if orc.best_score == res.score else orc.best_score - res.score)

    return [
        BenchRow(
            alpha=cfg.bucket_alpha,
            budget=cfg.budget_U,
            slots=slots,
            vocab=vocab_size,
            top_k=top_k,
            mean_time_s=times[j] / instances,
            mean_score=scores[j] / instances,
            mean_gap=(sum(gaps[j]) / len(gaps[j])) if gaps[j] else None,
            gap_count=len(gaps[j]),
        )
        for j, cfg in enumerate(configs)
    ]


def format_table(rows: list[BenchRow]) -> str:
    head = f"{'alpha':>5} {'budget':>6} {'S':>4} {'V':>5} {'k':>3} {'time(ms)':>10} {'score':>12} {'gap':>10}"
    lines = [head, "-" * len(head)]
    for r in rows:
        gap = "-" if r.mean_gap is None else f"{r.mean_gap:.3g}"
        lines.append(
            f"{r.alpha:>5} {r.budget:>6} {r.slots:>4} {r.vocab:>5} {r.top_k:>3} {r.mean_time_s * 1e3:>10.4f} {r.mean_score:>12.4f} {gap:>10}"
        )
    return "\n".join(lines)
