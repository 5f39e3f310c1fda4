"""Length-controlled decoding for CTC-trained non-autoregressive summarizers."""
from ._backend import BACKEND
from .core import (
    InputError,
    LengthWeights,
    LogProbMatrix,
    Reduction,
    TokenPath,
    Vocabulary,
    WordSequence,
    reduce_merge,
    reduce_nomerge,
    reduced_length,
)
from .ctc_loss import EnumerationTooLarge, brute_marginal, ctc_forward
from .lenctl import (
    DecodeResult,
    DecoderConfig,
    DPCell,
    DPTable,
    decode_exact,
    decode_greedy,
    decode_length_control,
    fill_table,
    truncate,
)
from .oracle import OracleResult, brute_decode, gap_report
from .rouge import RougeScore, corpus_rouge, rouge

__version__ = "0.1.0"
