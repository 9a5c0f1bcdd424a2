"""Corpus loading: writing-system detection, sentence splitting, tokenization.

A corpus is a directory of UTF-8 text files, one per language, labeled by
filename stem. Each document is classified by its dominant script class, split
into sentences, stripped of punctuation and symbols, and tokenized either on
whitespace (alphabetic scripts, case-folded) or into single characters
(logographic and syllabic scripts). Stopwords are never removed; they carry
language signal.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path


class CorpusError(Exception):
    """Raised for unloadable corpora and unclassifiable documents."""


class WritingSystem(enum.Enum):
    LOGOGRAPHIC = "logographic"
    SYLLABIC = "syllabic"
    ALPHABETIC = "alphabetic"


@dataclass(frozen=True)
class LanguageDoc:
    label: str
    raw_text: str
    writing_system: WritingSystem


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]
    label: str


@dataclass
class Corpus:
    docs: list[LanguageDoc] = field(default_factory=list)
    sentences: list[Sentence] = field(default_factory=list)


# Unicode block ranges, inclusive. Codepoints of general category L* outside
# these blocks count as alphabetic.
_LOGOGRAPHIC_BLOCKS = ((0x4E00, 0x9FFF),)  # CJK Unified Ideographs
_SYLLABIC_BLOCKS = (
    (0x3040, 0x309F),  # Hiragana
    (0x30A0, 0x30FF),  # Katakana
    (0xAC00, 0xD7A3),  # Hangul Syllables
)

_TERMINATORS = ".!?。！？।؟\n\r"
_SENTENCE_SPLIT = re.compile("[" + re.escape(_TERMINATORS) + "]")


def _in_blocks(cp: int, blocks: tuple[tuple[int, int], ...]) -> bool:
    return any(lo <= cp <= hi for lo, hi in blocks)


def classify_writing_system(text: str) -> WritingSystem:
    """Majority vote over letter codepoints, by Unicode block.

    Ties break Logographic > Syllabic > Alphabetic. Raises CorpusError when
    the text contains no letter codepoints at all.
    """
    logo = syll = alpha = 0
    for ch in text:
        if unicodedata.category(ch)[0] != "L":
            continue
        cp = ord(ch)
        if _in_blocks(cp, _LOGOGRAPHIC_BLOCKS):
            logo += 1
        elif _in_blocks(cp, _SYLLABIC_BLOCKS):
            syll += 1
        else:
            alpha += 1
    total = logo + syll + alpha
    if total == 0:
        raise CorpusError("unclassifiable text")
    best = max(logo, syll, alpha)
    if logo == best:
        return WritingSystem.LOGOGRAPHIC
    if syll == best:
        return WritingSystem.SYLLABIC
    return WritingSystem.ALPHABETIC


def split_sentences(text: str) -> list[str]:
    """Split on sentence terminators (. ! ? 。 ! ? । ؟) or newlines.

    Terminators are dropped; empty and whitespace-only segments are dropped;
    segments are stripped of surrounding whitespace.
    """
    return [seg.strip() for seg in _SENTENCE_SPLIT.split(text) if seg.strip()]


def strip_punctuation(sentence: str) -> str:
    """Remove all codepoints of Unicode category P* and S*; keep the rest."""
    return "".join(ch for ch in sentence if unicodedata.category(ch)[0] not in "PS")


def tokenize(sentence: str, ws: WritingSystem) -> list[str]:
    """Alphabetic: whitespace-split and case-fold. Other scripts: one token
    per non-whitespace codepoint."""
    if ws is WritingSystem.ALPHABETIC:
        return sentence.lower().split()
    return [ch for ch in sentence if not ch.isspace()]


def _raw_segments(text: str, line_per_sentence: bool) -> list[str]:
    if line_per_sentence:
        return [ln.strip() for ln in text.splitlines() if ln.strip()]
    return split_sentences(text)


def load_corpus(directory: str | Path, line_per_sentence: bool = False) -> Corpus:
    """Load every regular file in `directory` as one language.

    Files are processed in lexicographic filename order; the filename stem is
    the language label. With line_per_sentence each line is one pre-split
    sentence (for Bible-style parallel corpora); otherwise documents are split
    on sentence terminators.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"corpus directory not found: {directory}")
    paths = sorted(
        (p for p in directory.iterdir() if p.is_file() and not p.name.startswith(".")),
        key=lambda p: p.name,
    )
    if len(paths) < 2:
        raise CorpusError(f"fewer than 2 languages in {directory}")

    corpus = Corpus()
    for path in paths:
        try:
            raw = path.read_bytes().decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"file not valid UTF-8: {path.name}") from exc
        label = path.stem
        segments = _raw_segments(raw, line_per_sentence)
        if not segments:
            raise CorpusError(f"zero sentences: {label}")
        try:
            ws = classify_writing_system(raw)
        except CorpusError as exc:
            raise CorpusError(f"unclassifiable text: {label}") from exc
        doc = LanguageDoc(label, raw, ws)
        sentences = []
        for seg in segments:
            tokens = tokenize(strip_punctuation(seg), ws)
            if tokens:
                sentences.append(Sentence(tuple(tokens), label))
        if not sentences:
            raise CorpusError(f"zero sentences: {label}")
        corpus.docs.append(doc)
        corpus.sentences.extend(sentences)
    return corpus
