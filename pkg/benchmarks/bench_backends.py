#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the two hot loops (skip-gram SGD, layout SGD) on identical workloads with
both backends, reports wall time, speedup, and the maximum absolute deviation
between results (expected: 0.0 — the backends are bit-identical by design).

Usage: python benchmarks/bench_backends.py [--full]
"""

import argparse
import time

import numpy as np

from lingua_atlas._kernels import pure
from lingua_atlas._kernels.rng import derive_state

try:
    from lingua_atlas._kernels import _native as native
except ImportError:
    native = None


def skipgram_workload(n_sentences, sent_len, vocab, dim, seed=0):
    rng = np.random.default_rng(seed)
    tokens = rng.integers(0, vocab, size=n_sentences * sent_len).astype(np.int32)
    offsets = np.arange(0, len(tokens) + 1, sent_len, dtype=np.int64)
    table = rng.integers(0, vocab, size=1 << 20).astype(np.int32)
    w_in = rng.uniform(-0.5 / dim, 0.5 / dim, size=(vocab, dim))
    w_out = np.zeros((vocab, dim))
    n_pairs = sum(
        min(c + 5, sent_len - 1) - max(c - 5, 0) for c in range(sent_len)
    ) * n_sentences
    args = (tokens, offsets, 5, 5, table, 0.025, 1e-4, 1, n_pairs, derive_state(1, 2))
    return (w_in, w_out), args


def layout_workload(n, k, epochs, seed=0):
    rng = np.random.default_rng(seed)
    e = n * k
    heads = np.repeat(np.arange(n, dtype=np.int64), k)
    tails = ((heads + 1 + rng.integers(0, n - 2, size=e)) % n).astype(np.int64)
    eps = 1.0 / rng.uniform(0.05, 1.0, size=e)
    coords = np.ascontiguousarray(rng.uniform(-10, 10, size=(n, 2)))
    args = (heads, tails, eps, 1.577, 0.895, 1.0, epochs, 5, derive_state(2, 3))
    return coords, args


def run(label, make_workload, call):
    results = {}
    times = {}
    backends = [("pure", pure)] + ([("native", native)] if native else [])
    for name, mod in backends:
        state, args = make_workload()
        start = time.perf_counter()
        call(mod, state, args)
        times[name] = time.perf_counter() - start
        results[name] = state
    line = f"{label:<22} pure {times['pure']:8.3f}s"
    if native:
        speedup = times["pure"] / times["native"]
        if isinstance(results["pure"], tuple):
            dev = max(np.abs(a - b).max() for a, b in zip(results["pure"], results["native"]))
        else:
            dev = np.abs(results["pure"] - results["native"]).max()
        line += f"   native {times['native']:8.3f}s   speedup {speedup:7.1f}x   max|diff| {dev:.3g}"
    else:
        line += "   (native backend not built)"
    print(line)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true", help="larger workloads")
    args = parser.parse_args()

    if args.full:
        sg_size, ly_size = (1000, 14, 1500, 64), (800, 15, 300)
    else:
        sg_size, ly_size = (300, 10, 500, 64), (300, 15, 120)

    print(f"workloads: skipgram {sg_size}, layout {ly_size}")
    run(
        "skip-gram SGD",
        lambda: skipgram_workload(*sg_size),
        lambda mod, state, a: mod.train_skipgram(state[0], state[1], *a),
    )
    run(
        "layout SGD",
        lambda: layout_workload(*ly_size),
        lambda mod, state, a: mod.optimize_layout(state, *a),
    )


if __name__ == "__main__":
    main()
