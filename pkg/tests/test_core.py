import numpy as np
import pytest
from hypothesis import given, strategies as st

from ctclen.core import (
    InputError,
    LengthWeights,
    LogProbMatrix,
    Vocabulary,
    WordSequence,
    reduce_merge,
    reduce_nomerge,
    reduced_length,
)

VOCAB = Vocabulary(("a", "b", "<b>"), 2)
a, b, E = 0, 1, 2


def test_merge_canonical_example():
    assert reduce_merge([a, a, E, E, a, b, b, E], VOCAB).text == "a a b"
    assert reduce_merge([a, a, E, E, a, b, b, E], VOCAB).words == (a, a, b)


def test_merge_trivial_cases():
    assert reduce_merge([E, E, E], VOCAB).words == ()
    assert reduce_merge([a, E, a], VOCAB).words == (a, a)


def test_nomerge_canonical_example():
    assert reduce_nomerge([a, a, E, a, b, b, E], VOCAB).words == (a, a, a, b, b)
    assert reduce_nomerge([E], VOCAB).words == ()
    assert reduce_nomerge([a, b, a], VOCAB).words == (a, b, a)


def test_bad_token_id():
    with pytest.raises(InputError):
        reduce_merge([a, 7], VOCAB)
    with pytest.raises(InputError):
        reduce_nomerge([-1], VOCAB)


def test_reduced_length_examples():
    v = Vocabulary(("I", "am", "a", "<b>"), 3)
    assert reduced_length(["am", "I"], LengthWeights.SEPARATOR, v) == 4
    assert reduced_length(["am", "I"], "appended", v) == 5
    assert reduced_length(["am", "I"], "unit", v) == 2
    for w in LengthWeights:
        assert reduced_length([], w, v) == 0


def test_vocabulary_invariants():
    v = Vocabulary(("hello", "ünï", "<b>"), 2)
    assert v.widths == (5, 3, 0)
    with pytest.raises(InputError):
        Vocabulary(("x", "x"), 0)
    with pytest.raises(InputError):
        Vocabulary(("x",), 3)
    with pytest.raises(InputError):
        Vocabulary.from_tokens(["x"], "<b>")


def test_matrix_validation():
    LogProbMatrix.from_probs([[0.5, 0.5, 0.0]])
    with pytest.raises(InputError):
        LogProbMatrix.from_probs([[0.5, 0.6]])
    with pytest.raises(InputError):
        LogProbMatrix(np.array([[np.nan, 0.0]]))
    with pytest.raises(InputError):
        LogProbMatrix(np.zeros((0, 3)))


def test_word_sequence_rejects_blank():
    with pytest.raises(InputError):
        WordSequence.from_ids([a, E], VOCAB)


# A word sequence without adjacent repeats, expanded into a path by repeating
# tokens and sprinkling blanks, must reduce back to itself.
words_no_adjacent = st.lists(st.sampled_from([a, b]), max_size=6).map(
    lambda ws: [w for i, w in enumerate(ws) if i == 0 or ws[i - 1] != w]
)


@given(words_no_adjacent, st.data())
def test_merge_inverts_expansion(words, data):
    path = [E] * data.draw(st.integers(0, 2))
    for w in words:
        path += [w] * data.draw(st.integers(1, 3))
        path += [E] * data.draw(st.integers(0, 2))
    if not path:
        path = [E]
    assert reduce_merge(path, VOCAB).words == tuple(words)


paths = st.lists(st.sampled_from([a, b, E]), min_size=1, max_size=12)


@given(paths)
def test_nomerge_is_blank_deletion(path):
    assert reduce_nomerge(path, VOCAB).words == tuple(t for t in path if t != E)


@given(paths)
def test_merge_is_shorter_subsequence(path):
    merged = reduce_merge(path, VOCAB).words
    plain = reduce_nomerge(path, VOCAB).words
    assert len(merged) <= len(plain)
    # merged output is plain output with adjacent duplicates partly collapsed
    it = iter(plain)
    assert all(any(x == y for y in it) for x in merged)


@given(paths)
def test_separator_vs_appended(path):
    ws = reduce_nomerge(path, VOCAB)
    if ws.words:
        sep = reduced_length(ws, "separator", VOCAB)
        assert sep == reduced_length(ws, "appended", VOCAB) - 1
        assert sep == len(ws.text)
