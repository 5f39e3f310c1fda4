"""``ctclen`` command line: decode | gen | bench | score | ctc-score.

Exit codes: 0 success, 1 usage error, 2 input error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import matrixio
from .bench import COLUMNS, format_table, run_bench
from .core import InputError, LengthWeights, reduced_length
from .ctc_loss import ctc_forward
from .lenctl import DecoderConfig, decode_exact, decode_greedy, decode_length_control, truncate
from .rouge import corpus_rouge
from .synth import random_instance

EXIT_USAGE = 1
EXIT_INPUT = 2

def _warn(msg: str) -> None:
    print(f"ctclen: warning: {msg}", file=sys.stderr)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_decode(args) -> int:
    matrix, vocab = matrixio.read(args.input)
    weights = LengthWeights.parse(args.weights)
    if args.mode in ("greedy", "greedy-truncate"):
        res = decode_greedy(matrix, vocab, args.variant, weights)
        words, score = res.words, res.score
        char_len = res.char_len
        if args.mode == "greedy-truncate":
            if args.budget is None:
                raise InputError("--mode greedy-truncate needs --budget")
            limit = max(0, args.budget - 1 if args.strict_budget else args.budget)
            words = truncate(words, limit, weights, args.truncate)
            # a character cut may split a word, so measure the text itself
            char_len = len(words.text) if args.truncate == "char" else reduced_length(words, weights, vocab)
        text = words.text
    else:
        if args.budget is None:
            raise InputError(f"--mode {args.mode} needs --budget")
        if args.mode == "exact":
            res = decode_exact(matrix, vocab, args.budget, weights, not args.strict_budget)
        else:
            cfg = DecoderConfig(
                budget_U=args.budget,
                bucket_alpha=args.bucket_size,
                top_k=args.top_k,
                variant=args.variant,
                weights=weights,
                inclusive_budget=not args.strict_budget,
                select=args.select,
            )
            res = decode_length_control(matrix, vocab, cfg)
        text, char_len, score = res.text, res.char_len, res.score
        if not res.words.words:
            _warn("empty summary: no non-empty hypothesis fits the budget")
    print(text)
    print(f"length: {char_len}")
    print(f"score: {score!r}")
    return 0


def cmd_gen(args) -> int:
    matrix, vocab = random_instance(args.slots, args.vocab_size, args.seed, args.peakedness)
    if args.output == "-":
        if args.binary:
            sys.stdout.buffer.write(matrixio.dump_bytes(matrix, vocab))
        else:
            sys.stdout.write(matrixio.dumps(matrix, vocab))
    else:
        matrixio.write(args.output, matrix, vocab, binary=args.binary)
    return 0


def cmd_bench(args) -> int:
    rows = run_bench(
        alphas=args.alphas,
        budgets=args.budgets,
        instances=args.instances,
        seed=args.seed,
        slots=args.slots,
        vocab_size=args.vocab_size,
        top_k=args.top_k,
        variant=args.variant,
        weights=args.weights,
        peakedness=args.peakedness,
        oracle_max_size=args.oracle_max_size,
        backend=args.backend,
        repeats=args.repeats,
    )
    csv_lines = [",".join(COLUMNS)] + [r.csv(with_time=not args.no_time) for r in rows]
    if args.csv:
        Path(args.csv).write_text("\n".join(csv_lines) + "\n")
    else:
        print("\n".join(csv_lines))
    print(format_table(rows), file=sys.stderr if not args.csv else sys.stdout)
    return 0


def _read_lines(path) -> list[str]:
    try:
        return Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def cmd_score(args) -> int:
    cands, refs = _read_lines(args.candidate), _read_lines(args.reference)
    if len(cands) != len(refs):
        raise InputError(f"line count mismatch: {len(cands)} candidate vs {len(refs)} reference lines")
    if not cands:
        raise InputError("no lines to score")
    empty = sum(1 for c in cands if not c.split())
    if empty:
        _warn(f"{empty} empty candidate line(s) score zero")
    result = corpus_rouge(zip(cands, refs), args.mode)
    print(f"# mode={result.mode} columns: line,R1,R2,RL")
    for i, s in enumerate(result.per_pair, 1):
        r1, r2, rl = s.values(result.mode)
        print(f"{i},{r1:.6f},{r2:.6f},{rl:.6f}")
    print(f"corpus,{result.r1:.6f},{result.r2:.6f},{result.rl:.6f}")
    return 0


def cmd_ctc_score(args) -> int:
    matrix, vocab = matrixio.read(args.input)
    print(repr(ctc_forward(matrix, args.target, vocab)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ctclen", description="Length-controlled CTC decoding toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decode", help="decode a matrix file")
    d.add_argument("input")
    d.add_argument("--budget", type=int)
    d.add_argument("--bucket-size", type=int, default=4)
    d.add_argument("--top-k", type=int, default=20)
    d.add_argument("--variant", choices=["merge", "nomerge"], default="merge")
    d.add_argument("--weights", choices=[w.value for w in LengthWeights], default="separator")
    d.add_argument("--mode", choices=["length-control", "exact", "greedy", "greedy-truncate"], default="length-control")
    d.add_argument("--select", choices=["best", "longest"], default="best",
                   help="final cell: best score over feasible buckets, or the longest feasible bucket")
    d.add_argument("--truncate", choices=["word", "char"], default="word", help="granularity for greedy-truncate")
    d.add_argument("--strict-budget", action="store_true", help="require length < budget instead of <=")
    d.set_defaults(func=cmd_decode)

    g = sub.add_parser("gen", help="write a seeded synthetic matrix file")
    g.add_argument("--slots", type=int, required=True)
    g.add_argument("--vocab-size", type=int, required=True, help="including the blank")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--peakedness", type=float, default=1.0)
    g.add_argument("--binary", action="store_true")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time/objective sweep over bucket sizes and budgets")
    b.add_argument("--alphas", type=_int_list, default=[1, 2, 4, 8])
    b.add_argument("--budgets", type=_int_list, default=[50])
    b.add_argument("--instances", type=int, default=200)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--slots", type=int, default=64)
    b.add_argument("--vocab-size", type=int, default=50)
    b.add_argument("--top-k", type=int, default=20)
    b.add_argument("--variant", choices=["merge", "nomerge"], default="merge")
    b.add_argument("--weights", choices=[w.value for w in LengthWeights], default="separator")
    b.add_argument("--peakedness", type=float, default=1.0)
    b.add_argument("--oracle-max-size", type=int, default=0, help="run the oracle when V**S is at most this")
    b.add_argument("--backend", choices=["cython", "python"], default=None)
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("--no-time", action="store_true", help="leave the time column empty (for diffable output)")
    b.add_argument("--csv", help="write machine-readable rows here instead of stdout")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("score", help="ROUGE of line-aligned candidate/reference files")
    s.add_argument("candidate")
    s.add_argument("reference")
    s.add_argument("--mode", choices=["f1", "recall"], default="f1")
    s.set_defaults(func=cmd_score)

    c = sub.add_parser("ctc-score", help="CTC log marginal of a target under a matrix")
    c.add_argument("input")
    c.add_argument("--target", required=True)
    c.set_defaults(func=cmd_ctc_score)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"ctclen: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"ctclen: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
