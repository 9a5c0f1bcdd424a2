# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels: skip-gram SGD and UMAP layout SGD.

Mirror of pure.py, operation for operation. The arithmetic (order, operand
types, libm calls, splitmix64 stream) is kept identical so results match the
pure backend bit for bit; the build disables FP contraction for the same
reason. Any change here must be mirrored in pure.py.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, pow
from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport free, malloc

cdef uint64_t GOLDEN = <uint64_t>0x9E3779B97F4A7C15


cdef inline uint64_t mix64(uint64_t z) nogil:
    z ^= z >> 30
    z *= <uint64_t>0xBF58476D1CE4E5B9
    z ^= z >> 27
    z *= <uint64_t>0x94D049BB133111EB
    z ^= z >> 31
    return z


cdef inline double clip4(double g) nogil:
    if g > 4.0:
        return 4.0
    elif g < -4.0:
        return -4.0
    return g


def train_skipgram(
    double[:, ::1] w_in,
    double[:, ::1] w_out,
    int32_t[::1] tokens,
    int64_t[::1] offsets,
    int window,
    int negative,
    int32_t[::1] noise_table,
    double lr0,
    double lr_min,
    int epochs,
    int64_t total_pairs,
    unsigned long long rng_state,
):
    if total_pairs <= 0 or epochs <= 0:
        return
    cdef Py_ssize_t dim = w_in.shape[1]
    cdef uint64_t tmask = <uint64_t>(noise_table.shape[0] - 1)
    cdef uint64_t state = <uint64_t>rng_state
    cdef double* acc = <double*>malloc(dim * sizeof(double))
    if acc == NULL:
        raise MemoryError()
    cdef int64_t pairs_done = 0
    cdef Py_ssize_t n_sentences = offsets.shape[0] - 1
    cdef Py_ssize_t s, c, p, d, lo, hi
    cdef int epoch, t
    cdef int32_t center, context, target
    cdef int64_t start, end
    cdef double lr, label, dot, sgm, g, tmp

    try:
        with nogil:
            for epoch in range(epochs):
                for s in range(n_sentences):
                    start = offsets[s]
                    end = offsets[s + 1]
                    for c in range(start, end):
                        center = tokens[c]
                        lo = c - window if c - window > start else start
                        hi = c + window + 1 if c + window + 1 < end else end
                        for p in range(lo, hi):
                            if p == c:
                                continue
                            context = tokens[p]
                            lr = lr0 + (lr_min - lr0) * (<double>pairs_done / <double>total_pairs)
                            for d in range(dim):
                                acc[d] = 0.0
                            for t in range(negative + 1):
                                if t == 0:
                                    target = context
                                    label = 1.0
                                else:
                                    state = state + GOLDEN
                                    target = noise_table[<Py_ssize_t>(mix64(state) & tmask)]
                                    if target == context:
                                        continue
                                    label = 0.0
                                dot = 0.0
                                for d in range(dim):
                                    dot += w_in[center, d] * w_out[target, d]
                                if dot > 37.0:
                                    sgm = 1.0
                                elif dot < -37.0:
                                    sgm = 0.0
                                else:
                                    sgm = 1.0 / (1.0 + exp(-dot))
                                g = (label - sgm) * lr
                                for d in range(dim):
                                    tmp = w_out[target, d]
                                    acc[d] += g * tmp
                                    w_out[target, d] = tmp + g * w_in[center, d]
                            for d in range(dim):
                                w_in[center, d] += acc[d]
                            pairs_done += 1
    finally:
        free(acc)


def optimize_layout(
    double[:, ::1] coords,
    int64_t[::1] heads,
    int64_t[::1] tails,
    double[::1] epochs_per_sample,
    double a,
    double b,
    double lr0,
    int n_epochs,
    int negative_sample_rate,
    unsigned long long rng_state,
):
    if n_epochs <= 0:
        return
    cdef uint64_t n = <uint64_t>coords.shape[0]
    cdef Py_ssize_t n_edges = heads.shape[0]
    cdef double[::1] next_due = epochs_per_sample.copy()
    cdef uint64_t state = <uint64_t>rng_state
    cdef int epoch, q
    cdef Py_ssize_t e, i, j, l
    cdef double alpha, dx, dy, d2, coef, gx, gy

    with nogil:
        for epoch in range(n_epochs):
            alpha = lr0 * (1.0 - <double>epoch / <double>n_epochs)
            for e in range(n_edges):
                if next_due[e] > epoch:
                    continue
                i = heads[e]
                j = tails[e]
                dx = coords[i, 0] - coords[j, 0]
                dy = coords[i, 1] - coords[j, 1]
                d2 = dx * dx + dy * dy
                if d2 > 0.0:
                    coef = (-2.0 * a * b * pow(d2, b - 1.0)) / (1.0 + a * pow(d2, b))
                    gx = clip4(coef * dx)
                    gy = clip4(coef * dy)
                    coords[i, 0] += alpha * gx
                    coords[i, 1] += alpha * gy
                    coords[j, 0] -= alpha * gx
                    coords[j, 1] -= alpha * gy
                for q in range(negative_sample_rate):
                    state = state + GOLDEN
                    l = <Py_ssize_t>(mix64(state) % n)
                    dx = coords[i, 0] - coords[l, 0]
                    dy = coords[i, 1] - coords[l, 1]
                    d2 = dx * dx + dy * dy
                    coef = (2.0 * b) / ((0.001 + d2) * (1.0 + a * pow(d2, b)))
                    gx = clip4(coef * dx)
                    gy = clip4(coef * dy)
                    coords[i, 0] += alpha * gx
                    coords[i, 1] += alpha * gy
                next_due[e] += epochs_per_sample[e]
