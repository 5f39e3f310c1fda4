#!/usr/bin/env python
"""Compiled vs pure-Python kernels on the same seeded instances.

    python benchmarks/bench_backends.py --instances 50

Prints mean decode time per backend and bucket size, the speed-up, and
checks that both backends produce the same decoded paths.
"""
import argparse
import sys

from ctclen import _backend
from ctclen.bench import run_bench
from ctclen.lenctl import DecoderConfig, decode_length_control
from ctclen.synth import random_instance


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--slots", type=int, default=64)
    p.add_argument("--vocab-size", type=int, default=50)
    p.add_argument("--budget", type=int, default=50)
    p.add_argument("--alphas", default="1,2,4,8")
    args = p.parse_args(argv)
    alphas = [int(a) for a in args.alphas.split(",")]

    if "cython" not in _backend.BACKENDS:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    for i in range(args.instances):
        m, v = random_instance(args.slots, args.vocab_size, i)
        for a in alphas:
            cfg = DecoderConfig(args.budget, bucket_alpha=a)
            fast = decode_length_control(m, v, cfg, "cython")
            slow = decode_length_control(m, v, cfg, "python")
            if fast.path != slow.path or fast.score != slow.score:
                print(f"backends disagree on instance {i}, alpha {a}", file=sys.stderr)
                return 1

    results = {}
    for name in ("python", "cython"):
        rows = run_bench(alphas=alphas, budgets=(args.budget,), instances=args.instances,
                         slots=args.slots, vocab_size=args.vocab_size, backend=name, repeats=1 if name == "python" else 3)
        results[name] = {r.alpha: r.mean_time_s for r in rows}

    print(f"S={args.slots} V={args.vocab_size} U={args.budget} instances={args.instances} (paths identical)")
    print(f"{'alpha':>5} {'python ms':>10} {'cython ms':>10} {'speed-up':>9}")
    for a in alphas:
        py, cy = results["python"][a], results["cython"][a]
        print(f"{a:>5} {py * 1e3:>10.3f} {cy * 1e3:>10.3f} {py / cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
