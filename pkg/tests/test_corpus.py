import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lingua_atlas.corpus import (
    CorpusError,
    WritingSystem,
    classify_writing_system,
    load_corpus,
    split_sentences,
    strip_punctuation,
    tokenize,
)


class TestClassify:
    def test_logographic(self):
        assert classify_writing_system("你好世界") is WritingSystem.LOGOGRAPHIC

    def test_alphabetic(self):
        assert classify_writing_system("hello world") is WritingSystem.ALPHABETIC

    def test_syllabic(self):
        assert classify_writing_system("こんにちは") is WritingSystem.SYLLABIC

    def test_majority_vote_japanese_mix(self):
        # kana majority over kanji
        assert classify_writing_system("これは日本語のぶんしょうです") is WritingSystem.SYLLABIC

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("你好ab", WritingSystem.LOGOGRAPHIC),  # tie: logographic wins
            ("こんにちはhello", WritingSystem.SYLLABIC),  # tie: syllabic over alphabetic
            ("мир šalom", WritingSystem.ALPHABETIC),  # cyrillic + latin both alphabetic
            ("مرحبا", WritingSystem.ALPHABETIC),  # abjads classified alphabetic
        ],
    )
    def test_tie_break_and_other_scripts(self, text, expected):
        assert classify_writing_system(text) is expected

    def test_no_letters_raises(self):
        with pytest.raises(CorpusError, match="unclassifiable"):
            classify_writing_system("123 456 !!!")

    @given(
        base=st.sampled_from(["hello world", "你好世界", "こんにちは", "γειά σου"]),
        noise=st.text(alphabet=".,!?;: \t\n«»()", max_size=20),
    )
    def test_invariant_under_punctuation_and_whitespace(self, base, noise):
        assert classify_writing_system(base + noise) is classify_writing_system(base)


class TestSplitSentences:
    def test_two_terminators(self):
        assert split_sentences("A b. C d!") == ["A b", "C d"]

    def test_cjk_full_stop(self):
        assert split_sentences("你好。再见。") == ["你好", "再见"]

    def test_empty(self):
        assert split_sentences("") == []

    def test_newlines_and_exotic_terminators(self):
        assert split_sentences("one\ntwo؟three।four?") == ["one", "two", "three", "four"]

    def test_whitespace_only_segments_dropped(self):
        assert split_sentences("a.   . b") == ["a", "b"]


class TestStripPunctuation:
    def test_category_p_removed(self):
        assert strip_punctuation("don't, stop!") == "dont stop"

    def test_identity_on_letters(self):
        assert strip_punctuation("abc") == "abc"

    def test_guillemets(self):
        assert strip_punctuation("«quoted»") == "quoted"

    def test_symbols_removed_digits_kept(self):
        assert strip_punctuation("a+b=3 $5") == "ab3 5"

    @given(st.text(max_size=80))
    def test_output_never_contains_punctuation_or_symbols(self, text):
        out = strip_punctuation(text)
        assert all(unicodedata.category(ch)[0] not in "PS" for ch in out)


class TestTokenize:
    def test_alphabetic_split_and_fold(self):
        assert tokenize("Hello World", WritingSystem.ALPHABETIC) == ["hello", "world"]

    def test_logographic_per_codepoint(self):
        assert tokenize("你好", WritingSystem.LOGOGRAPHIC) == ["你", "好"]

    def test_empty(self):
        assert tokenize("", WritingSystem.ALPHABETIC) == []

    def test_syllabic_skips_whitespace(self):
        assert tokenize("こん にちは", WritingSystem.SYLLABIC) == list("こんにちは")

    @given(st.lists(st.text(alphabet="abcdefghij", min_size=1, max_size=6), min_size=1, max_size=8))
    def test_alphabetic_retokenize_idempotent(self, tokens):
        once = tokenize(" ".join(tokens), WritingSystem.ALPHABETIC)
        assert tokenize(" ".join(once), WritingSystem.ALPHABETIC) == once

    @given(st.text(max_size=60), st.sampled_from(list(WritingSystem)))
    def test_no_token_empty_or_with_whitespace(self, text, ws):
        for tok in tokenize(strip_punctuation(text), ws):
            assert tok
            assert not any(ch.isspace() for ch in tok)


class TestLoadCorpus:
    def test_two_files(self, two_language_dir):
        corpus = load_corpus(two_language_dir)
        assert [d.label for d in corpus.docs] == ["en", "zh"]
        assert corpus.docs[1].writing_system is WritingSystem.LOGOGRAPHIC
        assert {s.label for s in corpus.sentences} == {"en", "zh"}
        # character-level tokens for the logographic doc
        zh = [s for s in corpus.sentences if s.label == "zh"]
        assert all(len(t) == 1 for s in zh for t in s.tokens)

    def test_missing_directory(self, tmp_path):
        with pytest.raises(CorpusError, match="not found"):
            load_corpus(tmp_path / "nope")

    def test_fewer_than_two_languages(self, tmp_path):
        with pytest.raises(CorpusError, match="fewer than 2"):
            load_corpus(tmp_path)
        (tmp_path / "en.txt").write_text("Hello there.", encoding="utf-8")
        with pytest.raises(CorpusError, match="fewer than 2"):
            load_corpus(tmp_path)

    def test_zero_sentences_names_label(self, tmp_path):
        (tmp_path / "en.txt").write_text("Hello there. Fine day.", encoding="utf-8")
        (tmp_path / "xx.txt").write_text("ab ,,, !!!", encoding="utf-8")
        # xx has letters (classifiable) but strips to one sentence; make it empty instead
        (tmp_path / "xx.txt").write_bytes(b"")
        with pytest.raises(CorpusError, match="zero sentences: xx"):
            load_corpus(tmp_path)

    def test_invalid_utf8_names_file(self, tmp_path):
        (tmp_path / "en.txt").write_text("Hello there.", encoding="utf-8")
        (tmp_path / "bad.txt").write_bytes(b"\xff\xfe\x00bad")
        with pytest.raises(CorpusError, match="bad.txt"):
            load_corpus(tmp_path)

    def test_deterministic_reload(self, two_language_dir):
        first = load_corpus(two_language_dir)
        second = load_corpus(two_language_dir)
        assert first.docs == second.docs
        assert first.sentences == second.sentences
        assert repr(first.sentences) == repr(second.sentences)

    def test_line_per_sentence(self, tmp_path):
        (tmp_path / "aa.txt").write_text("one two three\nfour five\n", encoding="utf-8")
        (tmp_path / "bb.txt").write_text("uno dos. tres\ncuatro\n", encoding="utf-8")
        corpus = load_corpus(tmp_path, line_per_sentence=True)
        bb = [s.tokens for s in corpus.sentences if s.label == "bb"]
        # the mid-line period is stripped, not a split point
        assert bb == [("uno", "dos", "tres"), ("cuatro",)]

    def test_lexicographic_order(self, tmp_path):
        for name, text in [("cc.txt", "Ccc c."), ("aa.txt", "Aaa a."), ("bb.txt", "Bbb b.")]:
            (tmp_path / name).write_text(text, encoding="utf-8")
        corpus = load_corpus(tmp_path)
        assert [d.label for d in corpus.docs] == ["aa", "bb", "cc"]
        assert [s.label for s in corpus.sentences] == ["aa", "bb", "cc"]

    def test_unclassifiable_file_names_label(self, tmp_path):
        (tmp_path / "en.txt").write_text("Hello there.", encoding="utf-8")
        (tmp_path / "nn.txt").write_text("1234 5678", encoding="utf-8")
        with pytest.raises(CorpusError, match="unclassifiable text: nn"):
            load_corpus(tmp_path)
