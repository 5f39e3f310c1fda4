"""Matrix files: a self-describing text format and a binary twin.

Both start with the same header::

    #ctclen-matrix v1 text|binary
    blank <token>
    vocab <V>
    <one token per line, V lines>
    slots <S>

The text body is ``S`` lines of ``V`` space-separated log-probs written
with 17 significant digits (``-inf`` allowed).  The binary body is
``S*V`` little-endian float64 values, row-major.
"""
from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .core import InputError, LogProbMatrix, Vocabulary

MAGIC = "#ctclen-matrix v1"


def _fmt(x: float) -> str:
    return "%.17g" % x


def _header(vocab: Vocabulary, S: int, kind: str) -> str:
    lines = [f"{MAGIC} {kind}", f"blank {vocab.blank}", f"vocab {len(vocab)}"]
    lines += list(vocab.tokens)
    lines.append(f"slots {S}")
    return "\n".join(lines) + "\n"


def dumps(matrix: LogProbMatrix, vocab: Vocabulary) -> str:
    matrix.check_vocab(vocab)
    for tok in vocab.tokens:
        if not tok or any(c.isspace() for c in tok):
            raise InputError(f"token {tok!r} cannot be serialised (empty or contains whitespace)")
    body = "".join(" ".join(_fmt(x) for x in row) + "\n" for row in matrix.values)
    return _header(vocab, matrix.S, "text") + body


def dump_bytes(matrix: LogProbMatrix, vocab: Vocabulary) -> bytes:
    matrix.check_vocab(vocab)
    head = _header(vocab, matrix.S, "binary").encode("utf-8")
    return head + matrix.values.astype("<f8").tobytes()


def write(path, matrix: LogProbMatrix, vocab: Vocabulary, binary: bool = False) -> None:
    path = Path(path)
    if binary:
        path.write_bytes(dump_bytes(matrix, vocab))
    else:
        path.write_bytes(dumps(matrix, vocab).encode("utf-8"))


def _parse_header(stream: io.BufferedIOBase) -> tuple[str, Vocabulary, int]:
    def line() -> str:
        raw = stream.readline()
        if not raw:
            raise InputError("unexpected end of file in header")
        try:
            return raw.decode("utf-8").rstrip("\n")
        except UnicodeDecodeError:
            raise InputError("header is not valid UTF-8") from None

    first = line()
    if not first.startswith(MAGIC + " "):
        raise InputError(f"not a matrix file (expected {MAGIC!r} header)")
    kind = first[len(MAGIC) + 1 :]
    if kind not in ("text", "binary"):
        raise InputError(f"unknown body kind {kind!r}")

    def keyed(key: str) -> str:
        text = line()
        if not text.startswith(key + " "):
            raise InputError(f"expected '{key} ...', got {text!r}")
        return text[len(key) + 1 :]

    def count(key: str) -> int:
        value = keyed(key)
        try:
            n = int(value)
        except ValueError:
            raise InputError(f"bad {key} count {value!r}") from None
        if n < 1:
            raise InputError(f"{key} count must be positive")
        return n

    blank = keyed("blank")
    V = count("vocab")
    tokens = [line() for _ in range(V)]
    S = count("slots")
    return kind, Vocabulary.from_tokens(tokens, blank), S


def loads_bytes(data: bytes) -> tuple[LogProbMatrix, Vocabulary]:
    stream = io.BytesIO(data)
    kind, vocab, S = _parse_header(stream)
    V = len(vocab)
    rest = stream.read()
    if kind == "binary":
        if len(rest) != 8 * S * V:
            raise InputError(f"binary body has {len(rest)} bytes, expected {8 * S * V}")
        values = np.frombuffer(rest, dtype="<f8").reshape(S, V)
    else:
        try:
            rows = rest.decode("utf-8").splitlines()
        except UnicodeDecodeError:
            raise InputError("body is not valid UTF-8") from None
        if len(rows) != S:
            raise InputError(f"expected {S} rows, found {len(rows)}")
        try:
            values = np.array([[float(x) for x in r.split()] for r in rows], dtype=np.float64)
        except ValueError as exc:
            raise InputError(f"bad number in body: {exc}") from None
        if values.shape != (S, V):
            raise InputError(f"every row must hold {V} values")
    return LogProbMatrix(values), vocab


def read(path) -> tuple[LogProbMatrix, Vocabulary]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads_bytes(data)
