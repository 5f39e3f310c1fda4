import numpy as np
import pytest

from conftest import COUNTER
from ctclen import matrixio
from ctclen.core import InputError, LogProbMatrix, Vocabulary
from ctclen.synth import random_instance


def test_counter_fixture_round_trips():
    data = COUNTER.read_bytes()
    m, v = matrixio.loads_bytes(data)
    assert v.tokens == ("I", "am", "a", "<b>") and v.blank_id == 3
    np.testing.assert_allclose(np.exp(m.values), [[0.3, 0.4, 0.2, 0.1], [0.1, 0.6, 0.05, 0.25]], atol=1e-15)
    assert matrixio.dumps(m, v).encode() == data


@pytest.mark.parametrize("seed", range(5))
def test_round_trip_text_and_binary(tmp_path, seed):
    m, v = random_instance(7, 9, seed, peakedness=20.0)
    text = tmp_path / "m.txt"
    matrixio.write(text, m, v)
    m2, v2 = matrixio.read(text)
    assert v2 == v
    np.testing.assert_array_equal(m2.values, m.values)
    assert matrixio.dumps(m2, v2).encode() == text.read_bytes()

    binf = tmp_path / "m.bin"
    matrixio.write(binf, m, v, binary=True)
    m3, v3 = matrixio.read(binf)
    np.testing.assert_array_equal(m3.values, m.values)
    assert matrixio.dump_bytes(m3, v3) == binf.read_bytes()
    # binary twin shares the header
    assert binf.read_bytes().split(b"\n")[1:9] == text.read_bytes().split(b"\n")[1:9]


def test_neg_inf_round_trip():
    v = Vocabulary(("x", "<b>"), 1)
    m = LogProbMatrix.from_probs([[0.0, 1.0], [0.5, 0.5]])
    s = matrixio.dumps(m, v)
    assert "-inf" in s
    assert matrixio.dumps(*matrixio.loads_bytes(s.encode())) == s


@pytest.mark.parametrize(
    "text",
    [
        "",
        "hello\n",
        "#ctclen-matrix v1 text\nblank <b>\nvocab 2\nx\n<b>\nslots 1\n0.5 0.5\n",
        "#ctclen-matrix v1 text\nblank <b>\nvocab 2\nx\n<b>\nslots 2\n-0.69314718055994529 -0.69314718055994529\n",
        "#ctclen-matrix v1 text\nblank q\nvocab 2\nx\n<b>\nslots 1\n0 -inf\n",
        "#ctclen-matrix v1 text\nblank <b>\nvocab x\n",
        "#ctclen-matrix v1 yaml\n",
        "#ctclen-matrix v1 binary\nblank <b>\nvocab 2\nx\n<b>\nslots 1\nabc",
    ],
)
def test_malformed(text):
    with pytest.raises(InputError):
        matrixio.loads_bytes(text.encode())


def test_whitespace_token_rejected():
    v = Vocabulary(("a b", "<b>"), 1)
    with pytest.raises(InputError):
        matrixio.dumps(LogProbMatrix.from_probs([[0.5, 0.5]]), v)
