import numpy as np
import pytest

from lingua_atlas.corpus import Sentence
from lingua_atlas.embed import SentenceMatrix


def make_sentences(token_lists, label="x"):
    return [Sentence(tuple(toks), label) for toks in token_lists]


def synthetic_language(label, alphabet, n_sentences, rng, min_len=5, max_len=10):
    """Random sentences over a fixed token alphabet."""
    sentences = []
    for _ in range(n_sentences):
        length = int(rng.integers(min_len, max_len + 1))
        toks = tuple(alphabet[i] for i in rng.integers(0, len(alphabet), size=length))
        sentences.append(Sentence(toks, label))
    return sentences


def gaussian_blobs(n_per_blob=60, n_blobs=3, dim=50, sigma=0.1, separation=10.0, seed=42):
    """Well-separated blobs with pairwise center distance `separation`."""
    rng = np.random.default_rng(seed)
    centers = np.zeros((n_blobs, dim))
    for i in range(n_blobs):
        centers[i, i] = separation / np.sqrt(2.0)
    rows = np.vstack([c + sigma * rng.standard_normal((n_per_blob, dim)) for c in centers])
    labels = [f"blob{i}" for i in range(n_blobs) for _ in range(n_per_blob)]
    return SentenceMatrix(rows, labels, "bow")


@pytest.fixture
def two_language_dir(tmp_path):
    """Tiny on-disk corpus: an alphabetic and a logographic language."""
    (tmp_path / "en.txt").write_text(
        "The cat sat. The dog ran! Where is the cat? Birds fly south.\n"
        "Rain falls here. Sun shines now.",
        encoding="utf-8",
    )
    (tmp_path / "zh.txt").write_text("你好世界。再见朋友。天气很好。我们走吧。今天下雨。", encoding="utf-8")
    return tmp_path
