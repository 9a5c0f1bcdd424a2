"""Sentence vectorization: bag-of-words, TF-IDF, and SIF-weighted word vectors.

The vocabulary treats one sentence as one document (sentences are the rows
being projected, so document frequency is sentence frequency). Word vectors
come from a from-scratch skip-gram negative-sampling trainer whose SGD loop
lives in the kernel backends; sentence vectors are the frequency-down-weighted
average of word vectors with the corpus-wide first principal component removed.
"""

from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._kernels.rng import STREAM_WORD2VEC, advance, derive_state, fill_floats
from .corpus import Corpus, Sentence

NOISE_TABLE_SIZE = 1 << 20
LR_FLOOR = 1e-4


class EmbedError(Exception):
    """Raised for empty vocabularies and degenerate embedding inputs."""


@dataclass
class Vocabulary:
    """Token ids (dense, lexicographic), sentence frequencies, and unigram
    probabilities over the retained tokens."""

    index: dict[str, int]
    df: dict[str, int]
    n_docs: int
    unigram_p: dict[str, float]

    @property
    def size(self) -> int:
        return len(self.index)

    @property
    def tokens(self) -> list[str]:
        return sorted(self.index, key=self.index.get)


@dataclass
class SentenceMatrix:
    rows: np.ndarray
    labels: list[str]
    kind: str  # bow | tfidf | w2v-sif


@dataclass
class Word2VecParams:
    dim: int = 64
    window: int = 5
    negative: int = 5
    epochs: int = 5
    lr: float = 0.025
    min_count: int = 1
    seed: int = 0

    def validate(self) -> None:
        if self.dim < 1 or self.window < 1 or self.negative < 1 or self.lr <= 0:
            raise EmbedError("invalid word2vec parameters")


@dataclass
class EmbeddingModel:
    vocab: Vocabulary
    w_in: np.ndarray
    w_out: np.ndarray


@dataclass
class SifParams:
    a: float = 1e-3


def _sentences(corpus: Corpus | Sequence[Sentence]) -> Sequence[Sentence]:
    return corpus.sentences if isinstance(corpus, Corpus) else corpus


def build_vocabulary(corpus: Corpus | Sequence[Sentence], min_count: int = 1) -> Vocabulary:
    """Count tokens, drop those with total frequency < min_count, assign ids
    in lexicographic codepoint order."""
    sentences = _sentences(corpus)
    counts: Counter[str] = Counter()
    df: Counter[str] = Counter()
    for sent in sentences:
        counts.update(sent.tokens)
        df.update(set(sent.tokens))
    kept = sorted(t for t, c in counts.items() if c >= min_count)
    if not kept:
        raise EmbedError("empty vocabulary after min_count filtering")
    total = sum(counts[t] for t in kept)
    return Vocabulary(
        index={t: i for i, t in enumerate(kept)},
        df={t: df[t] for t in kept},
        n_docs=len(sentences),
        unigram_p={t: counts[t] / total for t in kept},
    )


def count_vectorize(
    sentences: Corpus | Sequence[Sentence], vocab: Vocabulary
) -> SentenceMatrix:
    """Raw token counts per sentence; out-of-vocabulary tokens are ignored."""
    sentences = _sentences(sentences)
    rows = np.zeros((len(sentences), vocab.size), dtype=np.float64)
    index = vocab.index
    for i, sent in enumerate(sentences):
        row = rows[i]
        for tok in sent.tokens:
            j = index.get(tok)
            if j is not None:
                row[j] += 1.0
    return SentenceMatrix(rows, [s.label for s in sentences], "bow")


def _idf(vocab: Vocabulary) -> np.ndarray:
    df = np.empty(vocab.size, dtype=np.float64)
    for tok, i in vocab.index.items():
        df[i] = vocab.df[tok]
    return np.log((1.0 + vocab.n_docs) / (1.0 + df)) + 1.0


def tfidf_vectorize(
    sentences: Corpus | Sequence[Sentence], vocab: Vocabulary
) -> SentenceMatrix:
    """tf * idf with idf = ln((1+N)/(1+df)) + 1; nonzero rows L2-normalized."""
    counts = count_vectorize(sentences, vocab)
    rows = counts.rows * _idf(vocab)
    norms = np.sqrt((rows * rows).sum(axis=1))
    nonzero = norms > 0.0
    rows[nonzero] /= norms[nonzero, None]
    return SentenceMatrix(rows, counts.labels, "tfidf")


def _build_noise_table(counts: np.ndarray) -> np.ndarray:
    """Sampling table for the noise distribution proportional to count^0.75."""
    p = counts.astype(np.float64) ** 0.75
    cum = np.cumsum(p / p.sum())
    midpoints = (np.arange(NOISE_TABLE_SIZE, dtype=np.float64) + 0.5) / NOISE_TABLE_SIZE
    table = np.searchsorted(cum, midpoints, side="right")
    return np.minimum(table, len(counts) - 1).astype(np.int32)


def _token_stream(
    sentences: Iterable[Sentence], vocab: Vocabulary
) -> tuple[np.ndarray, np.ndarray]:
    """Vocabulary-filtered corpus as flat ids plus sentence offsets."""
    index = vocab.index
    ids: list[int] = []
    offsets = [0]
    for sent in sentences:
        ids.extend(index[t] for t in sent.tokens if t in index)
        offsets.append(len(ids))
    return np.asarray(ids, dtype=np.int32), np.asarray(offsets, dtype=np.int64)


def _count_pairs(offsets: np.ndarray, window: int) -> int:
    lengths = np.diff(offsets)
    total = 0
    for n in lengths:
        for c in range(n):
            total += min(c + window, n - 1) - max(c - window, 0)
    return int(total)


def train_word2vec(
    corpus: Corpus | Sequence[Sentence], params: Word2VecParams
) -> EmbeddingModel:
    """Skip-gram with negative sampling, deterministic for a given seed.

    Input vectors start uniform in [-0.5/dim, 0.5/dim] from the seeded stream,
    output vectors start at zero; the noise distribution is unigram count^0.75.
    """
    params.validate()
    sentences = _sentences(corpus)
    vocab = build_vocabulary(sentences, params.min_count)
    counts: Counter[str] = Counter()
    for sent in sentences:
        counts.update(sent.tokens)
    count_vec = np.array([counts[t] for t in vocab.tokens], dtype=np.int64)
    noise_table = _build_noise_table(count_vec)

    tokens, offsets = _token_stream(sentences, vocab)
    total_pairs = _count_pairs(offsets, params.window) * params.epochs

    state = derive_state(params.seed, STREAM_WORD2VEC)
    n_init = vocab.size * params.dim
    u = fill_floats(state, n_init)
    w_in = ((u - 0.5) / params.dim).reshape(vocab.size, params.dim)
    w_out = np.zeros((vocab.size, params.dim), dtype=np.float64)

    _kernels.train_skipgram(
        w_in,
        w_out,
        tokens,
        offsets,
        params.window,
        params.negative,
        noise_table,
        params.lr,
        LR_FLOOR,
        params.epochs,
        total_pairs,
        advance(state, n_init),
    )
    return EmbeddingModel(vocab, w_in, w_out)


def first_principal_component(matrix: np.ndarray) -> np.ndarray:
    """Dominant right singular direction of the uncentered matrix.

    Power iteration on the d x d Gram matrix, tolerance 1e-9 on successive
    iterates, at most 1000 iterations; unit norm, sign fixed so the first
    nonzero entry is positive.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.size == 0:
        raise EmbedError("first_principal_component needs a nonempty 2-D matrix")
    if not matrix.any():
        raise EmbedError("all-zero matrix has no principal component")
    gram = matrix.T @ matrix
    d = gram.shape[0]

    norms = (matrix * matrix).sum(axis=1)
    v = matrix[int(np.argmax(norms))].copy()
    v /= np.sqrt(v @ v)
    for _ in range(1000):
        w = gram @ v
        nw = np.sqrt(w @ w)
        if nw == 0.0:
            # start vector annihilated; fall back to the first surviving axis
            for j in range(d):
                w = gram[:, j].copy()
                nw = np.sqrt(w @ w)
                if nw > 0.0:
                    break
        w /= nw
        if np.sqrt(((w - v) ** 2).sum()) < 1e-9:
            v = w
            break
        v = w
    nz = np.nonzero(v)[0]
    if nz.size and v[nz[0]] < 0:
        v = -v
    return v


def sif_sentence_embed(
    sentences: Corpus | Sequence[Sentence],
    model: EmbeddingModel,
    sif: SifParams | None = None,
) -> SentenceMatrix:
    """Weighted average of word vectors (weight a/(a+p(t))) with the first
    principal component of the stacked rows removed.

    Empty and all-OOV sentences become zero rows and are excluded from the
    principal-component computation.
    """
    sif = sif or SifParams()
    if sif.a <= 0:
        raise EmbedError("sif smoothing constant must be > 0")
    sentences = _sentences(sentences)
    vocab = model.vocab
    weights = np.empty(vocab.size, dtype=np.float64)
    for tok, i in vocab.index.items():
        weights[i] = sif.a / (sif.a + vocab.unigram_p[tok])

    dim = model.w_in.shape[1]
    rows = np.zeros((len(sentences), dim), dtype=np.float64)
    used = np.zeros(len(sentences), dtype=bool)
    for i, sent in enumerate(sentences):
        ids = [vocab.index[t] for t in sent.tokens if t in vocab.index]
        if not ids:
            continue
        rows[i] = (weights[ids] @ model.w_in[ids]) / len(ids)
        used[i] = True
    if not used.any():
        raise EmbedError("all sentences empty or out of vocabulary")

    pc = first_principal_component(rows[used])
    rows -= np.outer(rows @ pc, pc)
    return SentenceMatrix(rows, [s.label for s in sentences], "w2v-sif")


_MAGIC = b"LATL"
_VERSION = 1


def save_word_vectors(model: EmbeddingModel, path: str | Path) -> None:
    """Flat little-endian binary: magic, version u32, V u64, dim u64, then
    row-major f64 input vectors, then length-prefixed (u32) UTF-8 tokens."""
    tokens = model.vocab.tokens
    v, dim = model.w_in.shape
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<IQQ", _VERSION, v, dim))
        fh.write(np.ascontiguousarray(model.w_in, dtype="<f8").tobytes())
        for tok in tokens:
            raw = tok.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)))
            fh.write(raw)


def load_word_vectors(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read the format written by save_word_vectors: (tokens, input vectors)."""
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise EmbedError(f"not a word-vector file: {path}")
        version, v, dim = struct.unpack("<IQQ", fh.read(20))
        if version != _VERSION:
            raise EmbedError(f"unsupported word-vector file version {version}")
        w_in = np.frombuffer(fh.read(v * dim * 8), dtype="<f8").reshape(v, dim).copy()
        tokens = []
        for _ in range(v):
            (length,) = struct.unpack("<I", fh.read(4))
            tokens.append(fh.read(length).decode("utf-8"))
    return tokens, w_in
