"""Deterministic splitmix64 streams shared by the pure and compiled kernels.

splitmix64 is counter-based: draw k from state s is mix64(s + k*GOLDEN), so a
vectorized batch and a sequential generator produce the same stream, and a
kernel can resume a stream by advancing the state arithmetically. Every random
choice in the library (weight init, negative sampling, layout negatives,
random layout init, power-iteration start vectors) comes from one of these
streams, which is what makes runs bit-reproducible for a given seed.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV53 = 1.0 / 9007199254740992.0  # 2**-53

# Stream tags, one per consumer of randomness.
STREAM_WORD2VEC = 0x57325653
STREAM_LAYOUT = 0x554D4150
STREAM_INIT = 0x494E4954
STREAM_SPECTRAL = 0x53504543


def mix64(z: int) -> int:
    z &= MASK64
    z ^= z >> 30
    z = (z * _MIX1) & MASK64
    z ^= z >> 27
    z = (z * _MIX2) & MASK64
    z ^= z >> 31
    return z


def derive_state(seed: int, stream: int) -> int:
    """Starting state for an independent stream of a given seed."""
    return mix64((seed & MASK64) ^ mix64(stream))


def advance(state: int, n_draws: int) -> int:
    """State after consuming n_draws values (e.g. after a vectorized fill)."""
    return (state + n_draws * GOLDEN) & MASK64


class SplitMix64:
    """Sequential generator; mirrors the C implementation in the native kernel."""

    def __init__(self, state: int):
        self.state = state & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def next_float(self) -> float:
        """Uniform in [0, 1)."""
        return (self.next_u64() >> 11) * _INV53


def fill_u64(state: int, n: int) -> np.ndarray:
    """Vectorized draws 1..n from `state`, identical to n next_u64() calls."""
    ks = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(state) + ks * np.uint64(GOLDEN)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return z


def fill_floats(state: int, n: int) -> np.ndarray:
    """Vectorized uniform [0, 1) draws, identical to n next_float() calls."""
    return (fill_u64(state, n) >> np.uint64(11)).astype(np.float64) * _INV53
