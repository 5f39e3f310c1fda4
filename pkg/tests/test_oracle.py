import math

import numpy as np
import pytest

from conftest import AM, I
from ctclen.core import LogProbMatrix, Vocabulary, reduce_merge
from ctclen.ctc_loss import EnumerationTooLarge
from ctclen.lenctl import DecoderConfig
from ctclen.oracle import _enumerate, brute_by_length, brute_decode, gap_report
from ctclen.core import LengthWeights, Reduction, reduced_length
from ctclen.synth import small_instance


def test_counter_merge_exact_length_three(counter):
    m, v = counter
    res = brute_decode(m, v, 3, reduction="merge", min_len=3)
    assert res.best_words.text == "a I"
    assert math.exp(res.best_score) == pytest.approx(0.02, abs=1e-12)


def test_counter_nomerge_bucket_two(counter):
    m, v = counter
    res = brute_decode(m, v, 4, reduction="nomerge", min_len=3)
    assert res.best_words.words == (I, AM)
    assert math.exp(res.best_score) == pytest.approx(0.18, abs=1e-12)
    assert res.char_len == 4


def test_budget_zero(counter):
    m, v = counter
    res = brute_decode(m, v, 0)
    assert res.feasible and res.best_words.words == () and res.best_path.slots == (3, 3)
    assert not brute_decode(m, v, 0, inclusive=False).feasible


def test_cap(counter):
    m, v = counter
    with pytest.raises(EnumerationTooLarge):
        brute_decode(m, v, 4, cap=15)


def test_gap_report_counter(counter):
    m, v = counter
    dp, orc, gap = gap_report(m, v, DecoderConfig(4, bucket_alpha=1, variant="nomerge"))
    assert gap == 0.0
    # restrict both to length <= 3 so the merge counterexample is the only candidate set
    dp, orc, gap = gap_report(m, v, DecoderConfig(3, bucket_alpha=1, variant="merge"))
    assert gap >= 0


def test_vectorised_lengths_match_reference_reduction():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m, v = small_instance(rng, 4, 4)
        for red in Reduction:
            for w in LengthWeights:
                for start, scores, lengths in _enumerate(m, v, w, red):
                    for k, n in enumerate(lengths):
                        idx = start + k
                        path = []
                        for _ in range(m.S):
                            path.append(idx % m.V)
                            idx //= m.V
                        path.reverse()
                        from ctclen.core import reduce_path

                        assert reduced_length(reduce_path(path, v, red), w, v) == n
                        assert scores[k] == pytest.approx(m.path_score(path))


def test_gap_is_zero_in_exact_regime():
    rng = np.random.default_rng(7)
    for _ in range(40):
        m, v = small_instance(rng, 5, 6)
        budget = int(rng.integers(0, 12))
        _, _, gap = gap_report(m, v, DecoderConfig(budget, bucket_alpha=1, top_k=len(v), variant="nomerge"))
        assert gap == 0.0
