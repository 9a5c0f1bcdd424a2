"""Pure-Python fallback kernels.

These are the slow twins of the Cython kernels in `_native.pyx`. Both sides
perform the same IEEE-754 double operations in the same order on the same
splitmix64 stream, so for a given seed the trained weights and optimized
coordinates are bit-identical across backends (the extension is compiled with
-ffp-contract=off to keep it that way). Any change here must be mirrored in
the .pyx file.
"""

from __future__ import annotations

from math import exp

import numpy as np

from .rng import GOLDEN, MASK64, mix64


def train_skipgram(
    w_in: np.ndarray,
    w_out: np.ndarray,
    tokens: np.ndarray,
    offsets: np.ndarray,
    window: int,
    negative: int,
    noise_table: np.ndarray,
    lr0: float,
    lr_min: float,
    epochs: int,
    total_pairs: int,
    rng_state: int,
) -> None:
    """Skip-gram negative-sampling SGD, in place on w_in/w_out.

    `tokens` is the vocabulary-filtered corpus as flat token ids, with
    `offsets[s]:offsets[s+1]` delimiting sentence s; windows never cross
    sentence boundaries. The learning rate decays linearly from lr0 to lr_min
    over `total_pairs` (center, context) updates.
    """
    if total_pairs <= 0 or epochs <= 0:
        return
    dim = w_in.shape[1]
    win = w_in.tolist()
    wout = w_out.tolist()
    toks = tokens.tolist()
    offs = offsets.tolist()
    table = noise_table.tolist()
    tmask = len(table) - 1
    state = rng_state & MASK64
    acc = [0.0] * dim
    pairs_done = 0
    n_sentences = len(offs) - 1

    for _ in range(epochs):
        for s in range(n_sentences):
            start = offs[s]
            end = offs[s + 1]
            for c in range(start, end):
                center = toks[c]
                lo = c - window if c - window > start else start
                hi = c + window + 1 if c + window + 1 < end else end
                for p in range(lo, hi):
                    if p == c:
                        continue
                    context = toks[p]
                    lr = lr0 + (lr_min - lr0) * (pairs_done / total_pairs)
                    wc = win[center]
                    for d in range(dim):
                        acc[d] = 0.0
                    for t in range(negative + 1):
                        if t == 0:
                            target = context
                            label = 1.0
                        else:
                            state = (state + GOLDEN) & MASK64
                            target = table[mix64(state) & tmask]
                            if target == context:
                                continue
                            label = 0.0
                        wt = wout[target]
                        dot = 0.0
                        for d in range(dim):
                            dot += wc[d] * wt[d]
                        if dot > 37.0:
                            sgm = 1.0
                        elif dot < -37.0:
                            sgm = 0.0
                        else:
                            sgm = 1.0 / (1.0 + exp(-dot))
                        g = (label - sgm) * lr
                        for d in range(dim):
                            tmp = wt[d]
                            acc[d] += g * tmp
                            wt[d] = tmp + g * wc[d]
                    for d in range(dim):
                        wc[d] += acc[d]
                    pairs_done += 1

    w_in[:] = win
    w_out[:] = wout


def optimize_layout(
    coords: np.ndarray,
    heads: np.ndarray,
    tails: np.ndarray,
    epochs_per_sample: np.ndarray,
    a: float,
    b: float,
    lr0: float,
    n_epochs: int,
    negative_sample_rate: int,
    rng_state: int,
) -> None:
    """UMAP layout SGD over directed fuzzy-graph edges, in place on coords.

    Edge e fires on epochs where its accumulated due-counter has come up
    (every epochs_per_sample[e] epochs, i.e. with frequency proportional to
    its membership weight). Attraction moves both endpoints; each firing also
    pushes the head away from `negative_sample_rate` uniformly drawn points.
    Gradient components are clipped to [-4, 4] before the learning-rate scale.
    """
    if n_epochs <= 0:
        return
    n = coords.shape[0]
    pos = coords.tolist()
    hs = heads.tolist()
    ts = tails.tolist()
    eps = epochs_per_sample.tolist()
    next_due = eps[:]
    state = rng_state & MASK64
    n_edges = len(hs)

    for epoch in range(n_epochs):
        alpha = lr0 * (1.0 - epoch / n_epochs)
        for e in range(n_edges):
            if next_due[e] > epoch:
                continue
            pi = pos[hs[e]]
            pj = pos[ts[e]]
            dx = pi[0] - pj[0]
            dy = pi[1] - pj[1]
            d2 = dx * dx + dy * dy
            if d2 > 0.0:
                coef = (-2.0 * a * b * d2 ** (b - 1.0)) / (1.0 + a * d2**b)
                gx = coef * dx
                if gx > 4.0:
                    gx = 4.0
                elif gx < -4.0:
                    gx = -4.0
                gy = coef * dy
                if gy > 4.0:
                    gy = 4.0
                elif gy < -4.0:
                    gy = -4.0
                pi[0] += alpha * gx
                pi[1] += alpha * gy
                pj[0] -= alpha * gx
                pj[1] -= alpha * gy
            for _ in range(negative_sample_rate):
                state = (state + GOLDEN) & MASK64
                pl = pos[mix64(state) % n]
                dx = pi[0] - pl[0]
                dy = pi[1] - pl[1]
                d2 = dx * dx + dy * dy
                coef = (2.0 * b) / ((0.001 + d2) * (1.0 + a * d2**b))
                gx = coef * dx
                if gx > 4.0:
                    gx = 4.0
                elif gx < -4.0:
                    gx = -4.0
                gy = coef * dy
                if gy > 4.0:
                    gy = 4.0
                elif gy < -4.0:
                    gy = -4.0
                pi[0] += alpha * gx
                pi[1] += alpha * gy
            next_due[e] += eps[e]

    coords[:] = pos
