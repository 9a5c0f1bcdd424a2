import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lingua_atlas.embed import (
    EmbedError,
    build_vocabulary,
    count_vectorize,
    tfidf_vectorize,
)

from conftest import make_sentences

token_lists = st.lists(
    st.lists(st.sampled_from("abcdefgh"), min_size=1, max_size=6),
    min_size=1,
    max_size=12,
)


class TestVocabulary:
    def test_direct_count(self):
        vocab = build_vocabulary(make_sentences([["a", "b"], ["a"]]))
        assert vocab.index == {"a": 0, "b": 1}
        assert vocab.df == {"a": 2, "b": 1}
        assert vocab.n_docs == 2

    def test_min_count_filter(self):
        vocab = build_vocabulary(make_sentences([["a", "b"], ["a"]]), min_count=2)
        assert vocab.index == {"a": 0}

    def test_unigram_probabilities(self):
        vocab = build_vocabulary(make_sentences([["a", "a", "b"]]))
        assert vocab.unigram_p == {"a": 2 / 3, "b": 1 / 3}

    def test_empty_after_filter_raises(self):
        with pytest.raises(EmbedError, match="empty vocabulary"):
            build_vocabulary(make_sentences([["a", "b"]]), min_count=5)

    def test_ids_lexicographic(self):
        vocab = build_vocabulary(make_sentences([["z", "m", "a", "é"]]))
        tokens = vocab.tokens
        assert tokens == sorted(tokens)
        assert [vocab.index[t] for t in tokens] == list(range(len(tokens)))

    @given(token_lists)
    def test_order_stability_and_probability_sum(self, lists):
        sents = make_sentences(lists)
        vocab = build_vocabulary(sents)
        assert vocab == build_vocabulary(list(reversed(sents)))
        assert math.isclose(sum(vocab.unigram_p.values()), 1.0, abs_tol=1e-9)
        assert all(1 <= vocab.df[t] <= vocab.n_docs for t in vocab.index)


class TestCountVectorize:
    def test_counts(self):
        sents = make_sentences([["a", "b"], ["a"]])
        vocab = build_vocabulary(sents)
        m = count_vectorize(make_sentences([["a", "a", "b"]]), vocab)
        assert m.rows.tolist() == [[2.0, 1.0]]
        assert m.kind == "bow"

    def test_oov_ignored(self):
        vocab = build_vocabulary(make_sentences([["a", "b"]]))
        m = count_vectorize(make_sentences([["a", "z"]]), vocab)
        assert m.rows.tolist() == [[1.0, 0.0]]

    def test_empty_sentence_zero_row(self):
        vocab = build_vocabulary(make_sentences([["a", "b"]]))
        m = count_vectorize(make_sentences([[]]), vocab)
        assert m.rows.tolist() == [[0.0, 0.0]]

    @given(token_lists)
    def test_nonnegative_integers_and_row_sums(self, lists):
        sents = make_sentences(lists)
        vocab = build_vocabulary(sents)
        m = count_vectorize(sents, vocab)
        assert (m.rows >= 0).all()
        assert (m.rows == np.round(m.rows)).all()
        for row, sent in zip(m.rows, sents):
            in_vocab = sum(1 for t in sent.tokens if t in vocab.index)
            assert row.sum() == in_vocab


class TestTfidf:
    def setup_method(self):
        self.sents = make_sentences([["a", "b"], ["a", "c"], ["a"]])
        self.vocab = build_vocabulary(self.sents)

    def test_idf_of_ubiquitous_token_is_one(self):
        # token in all docs: ln((1+3)/(1+3)) + 1 = 1
        m = tfidf_vectorize(make_sentences([["a"]]), self.vocab)
        assert m.rows[0, 0] == pytest.approx(1.0)

    def test_hand_oracle_row(self):
        # raw weights (1.0, 1+ln2, 0), L2-normalized
        m = tfidf_vectorize(make_sentences([["a", "b"]]), self.vocab)
        assert m.rows[0] == pytest.approx((0.508542, 0.861037, 0.0), abs=1e-6)
        assert m.kind == "tfidf"

    def test_single_token_vocab_normalizes_to_one(self):
        vocab = build_vocabulary(make_sentences([["q"], ["q"]]))
        m = tfidf_vectorize(make_sentences([["q", "q", "q"]]), vocab)
        assert m.rows.tolist() == [[1.0]]

    def test_all_oov_row_stays_zero(self):
        m = tfidf_vectorize(make_sentences([["zz"]]), self.vocab)
        assert m.rows.tolist() == [[0.0, 0.0, 0.0]]

    @given(token_lists)
    def test_nonzero_rows_unit_norm(self, lists):
        sents = make_sentences(lists)
        vocab = build_vocabulary(sents)
        m = tfidf_vectorize(sents, vocab)
        norms = np.linalg.norm(m.rows, axis=1)
        for norm in norms:
            assert norm == 0.0 or math.isclose(norm, 1.0, abs_tol=1e-9)

    def test_weight_non_increasing_in_df(self):
        # same tf, higher df -> weight must not increase
        sents = make_sentences([["rare", "common"], ["common"], ["common"], ["other"]])
        vocab = build_vocabulary(sents)
        m = tfidf_vectorize(make_sentences([["rare", "common"]]), vocab)
        rare_w = m.rows[0, vocab.index["rare"]]
        common_w = m.rows[0, vocab.index["common"]]
        assert common_w < rare_w
