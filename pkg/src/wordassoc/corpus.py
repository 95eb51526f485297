"""Corpus ingestion: CoNLL-U parsing, normalization, vocabularies, roles.

The unit of work is a *slice*: one tagged corpus file covering a time
period (for instance one decade). Everything downstream (training,
clustering, metrics) runs independently per slice, so all functions here
are pure and safe to call in parallel across slices.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyRoleSet, EmptyVocabulary, MalformedRecord

#: The 17 universal part-of-speech tags (CoNLL-U column 4).
UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

_NON_ALPHA = re.compile(r"[^a-z]+")
_ALPHA_ONLY = re.compile(r"[a-z]+")

#: Role letters used in vocabulary files.
ROLE_NEUTRAL = "N"
ROLE_ATTRIBUTE = "A"
ROLE_NONE = "-"


def normalize_token(raw: str) -> str | None:
    """Lowercase ``raw`` and strip every character outside a-z.

    Returns None when nothing remains (purely numeric or symbolic
    input). Total function: never raises. Idempotent on its non-None
    results.
    """
    out = _NON_ALPHA.sub("", raw.lower())
    return out if out else None


@dataclass(frozen=True, slots=True)
class TaggedToken:
    """One surface token with its universal POS tag.

    ``normalized`` is the lowercased alphabetic reduction of ``surface``
    (None for tokens with no alphabetic content, e.g. numbers).
    """

    surface: str
    upos: str
    normalized: str | None

    def __post_init__(self) -> None:
        if self.upos not in UPOS_TAGS:
            raise ValueError(f"unknown UPOS tag {self.upos!r}")
        if self.normalized is not None and not _ALPHA_ONLY.fullmatch(self.normalized):
            raise ValueError(f"normalized form {self.normalized!r} is not [a-z]+")

    @classmethod
    def from_surface(cls, surface: str, upos: str) -> "TaggedToken":
        return cls(surface=surface, upos=upos, normalized=normalize_token(surface))


Sentence = tuple[TaggedToken, ...]


@dataclass(frozen=True, slots=True)
class CorpusSlice:
    """One time-slice of the corpus: ordered tagged sentences.

    ``token_count`` counts only tokens with a present normalized form,
    i.e. the tokens that can ever enter a vocabulary.
    """

    slice_id: str
    sentences: tuple[Sentence, ...]
    token_count: int

    @classmethod
    def from_sentences(cls, slice_id: str, sentences: Iterable[Sequence[TaggedToken]]) -> "CorpusSlice":
        sents = tuple(tuple(sent) for sent in sentences)
        count = sum(1 for sent in sents for tok in sent if tok.normalized is not None)
        return cls(slice_id=slice_id, sentences=sents, token_count=count)

    @property
    def type_count(self) -> int:
        """Number of distinct normalized word forms (no frequency floor)."""
        return len({t.normalized for s in self.sentences for t in s if t.normalized is not None})


_CONLLU_COLUMNS = 10


def parse_conllu(lines: Iterable[str]) -> Iterator[Sentence]:
    """Parse CoNLL-U lines into sentences of :class:`TaggedToken`.

    Comment lines ('#') are skipped and a blank line closes a sentence.
    Multiword-token ranges ('1-2') and empty nodes ('1.1') carry no
    usable UPOS of their own and are skipped; the word lines following a
    range are parsed normally.

    Raises:
        MalformedRecord: wrong column count or unknown UPOS tag, with
            the 1-based line number.
    """
    current: list[TaggedToken] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line:
            if current:
                yield tuple(current)
                current = []
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != _CONLLU_COLUMNS:
            raise MalformedRecord(
                f"line {lineno}: expected {_CONLLU_COLUMNS} tab-separated columns, got {len(cols)}"
            )
        if "-" in cols[0] or "." in cols[0]:
            continue
        upos = cols[3]
        if upos not in UPOS_TAGS:
            raise MalformedRecord(f"line {lineno}: unknown UPOS tag {upos!r}")
        current.append(TaggedToken.from_surface(cols[1], upos))
    if current:
        yield tuple(current)


def serialize_conllu(sentences: Iterable[Sequence[TaggedToken]]) -> Iterator[str]:
    """Emit CoNLL-U lines (without trailing newlines) for the sentences.

    Only FORM and UPOS are meaningful; the remaining columns are '_'.
    ``parse_conllu(serialize_conllu(s))`` reproduces ``s`` whenever each
    token's normalized form was derived from its surface.
    """
    for sent in sentences:
        for i, tok in enumerate(sent, start=1):
            yield f"{i}\t{tok.surface}\t_\t{tok.upos}\t_\t_\t_\t_\t_\t_"
        yield ""


def load_slice(path: str | Path, slice_id: str | None = None) -> CorpusSlice:
    """Read one ``<slice_id>.conllu`` file into a :class:`CorpusSlice`."""
    path = Path(path)
    if slice_id is None:
        slice_id = path.name.removesuffix(".conllu")
    with path.open("r", encoding="utf-8") as fh:
        return CorpusSlice.from_sentences(slice_id, parse_conllu(fh))


class Vocabulary:
    """Dense word<->id mapping ordered by descending frequency.

    Ids run 0..V-1 and are deterministic: descending frequency with ties
    broken lexicographically. Iteration yields words in id order.
    """

    __slots__ = ("words", "counts", "min_count", "_index")

    def __init__(self, words: Sequence[str], counts: Sequence[int], min_count: int):
        if min_count < 1:
            raise ValueError("min_count must be >= 1")
        if len(words) != len(counts):
            raise ValueError("words and counts length mismatch")
        if len(words) == 0:
            raise EmptyVocabulary("vocabulary has no entries")
        self.words: tuple[str, ...] = tuple(words)
        self.counts: np.ndarray = np.asarray(counts, dtype=np.int64)
        self.min_count = int(min_count)
        if int(self.counts.min()) < self.min_count:
            raise ValueError("a frequency is below min_count")
        for k in range(1, len(self.words)):
            prev, cur = self.words[k - 1], self.words[k]
            pc, cc = self.counts[k - 1], self.counts[k]
            if cc > pc or (cc == pc and cur <= prev):
                raise ValueError("entries are not in (frequency desc, word asc) order")
        self._index: dict[str, int] = {w: i for i, w in enumerate(self.words)}
        if len(self._index) != len(self.words):
            raise ValueError("duplicate word in vocabulary")

    def __len__(self) -> int:
        return len(self.words)

    @property
    def size(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.words)

    def id_of(self, word: str) -> int:
        return self._index[word]

    def get_id(self, word: str) -> int | None:
        return self._index.get(word)

    def frequency(self, word: str) -> int:
        return int(self.counts[self._index[word]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return (
            self.words == other.words
            and self.min_count == other.min_count
            and np.array_equal(self.counts, other.counts)
        )

    def __repr__(self) -> str:
        return f"Vocabulary(size={len(self)}, min_count={self.min_count})"


def build_vocabulary(slice_: CorpusSlice, min_count: int = 5) -> Vocabulary:
    """Collect normalized words with frequency >= ``min_count``.

    Raises:
        EmptyVocabulary: no word survives the threshold.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    freq: Counter[str] = Counter(
        tok.normalized for sent in slice_.sentences for tok in sent if tok.normalized is not None
    )
    kept = sorted(
        ((w, c) for w, c in freq.items() if c >= min_count),
        key=lambda wc: (-wc[1], wc[0]),
    )
    if not kept:
        raise EmptyVocabulary(
            f"slice {slice_.slice_id!r}: no word reaches min_count={min_count}"
        )
    words, counts = zip(*kept)
    return Vocabulary(words, counts, min_count)


@dataclass(frozen=True, slots=True)
class WordRoleSet:
    """Role split of the vocabulary: neutral (proper nouns) vs attribute
    (adjectives). The two sets are disjoint by construction."""

    neutral: frozenset[str]
    attribute: frozenset[str]

    def __post_init__(self) -> None:
        overlap = self.neutral & self.attribute
        if overlap:
            raise ValueError(f"roles overlap on {sorted(overlap)[:5]}")

    def words(self) -> frozenset[str]:
        return self.neutral | self.attribute

    def role_of(self, word: str) -> str:
        if word in self.neutral:
            return ROLE_NEUTRAL
        if word in self.attribute:
            return ROLE_ATTRIBUTE
        return ROLE_NONE


def select_role_words(slice_: CorpusSlice, vocab: Vocabulary) -> WordRoleSet:
    """Assign each in-vocabulary word a role by majority UPOS.

    A word whose occurrences are tagged PROPN more often than any other
    single tag becomes neutral; ADJ wins the same way for attribute.
    Words with any other majority tag, or with an exact tie for the top
    tag, are excluded.

    Raises:
        EmptyRoleSet: either role set comes out empty.
    """
    tag_counts: dict[str, Counter[str]] = {}
    for sent in slice_.sentences:
        for tok in sent:
            w = tok.normalized
            if w is None or w not in vocab:
                continue
            counter = tag_counts.get(w)
            if counter is None:
                counter = tag_counts[w] = Counter()
            counter[tok.upos] += 1

    neutral: set[str] = set()
    attribute: set[str] = set()
    for word, counter in tag_counts.items():
        top = counter.most_common(2)
        tag, n = top[0]
        if len(top) > 1 and top[1][1] == n:
            continue
        if tag == "PROPN":
            neutral.add(word)
        elif tag == "ADJ":
            attribute.add(word)
    if not neutral or not attribute:
        missing = "neutral" if not neutral else "attribute"
        raise EmptyRoleSet(f"slice {slice_.slice_id!r}: no {missing} words")
    return WordRoleSet(neutral=frozenset(neutral), attribute=frozenset(attribute))


def write_vocabulary(path: str | Path, vocab: Vocabulary, roles: WordRoleSet) -> None:
    """Write ``word<TAB>id<TAB>frequency<TAB>role`` lines in id order."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for i, word in enumerate(vocab):
            fh.write(f"{word}\t{i}\t{vocab.counts[i]}\t{roles.role_of(word)}\n")


def read_vocabulary(path: str | Path) -> tuple[Vocabulary, WordRoleSet]:
    """Inverse of :func:`write_vocabulary`.

    The file format does not carry min_count; the reconstructed
    vocabulary uses the smallest stored frequency.

    Raises:
        MalformedRecord: bad field count, non-dense ids, or unknown role.
    """
    words: list[str] = []
    counts: list[int] = []
    neutral: set[str] = set()
    attribute: set[str] = set()
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise MalformedRecord(f"{path}: line {lineno}: expected 4 fields")
            word, id_str, freq_str, role = parts
            try:
                ident = int(id_str)
                freq = int(freq_str)
            except ValueError as exc:
                raise MalformedRecord(f"{path}: line {lineno}: non-integer field") from exc
            if ident != len(words):
                raise MalformedRecord(f"{path}: line {lineno}: ids are not dense/ordered")
            if role not in (ROLE_NEUTRAL, ROLE_ATTRIBUTE, ROLE_NONE):
                raise MalformedRecord(f"{path}: line {lineno}: unknown role {role!r}")
            words.append(word)
            counts.append(freq)
            if role == ROLE_NEUTRAL:
                neutral.add(word)
            elif role == ROLE_ATTRIBUTE:
                attribute.add(word)
    if not words:
        raise EmptyVocabulary(f"{path}: empty vocabulary file")
    try:
        vocab = Vocabulary(words, counts, min_count=min(counts))
    except ValueError as exc:
        raise MalformedRecord(f"{path}: {exc}") from exc
    return vocab, WordRoleSet(neutral=frozenset(neutral), attribute=frozenset(attribute))


def encode_slice(slice_: CorpusSlice, vocab: Vocabulary) -> tuple[np.ndarray, np.ndarray]:
    """Flatten a slice into in-vocabulary token ids plus sentence offsets.

    Out-of-vocabulary tokens are dropped, so window distances downstream
    are measured over surviving tokens. Sentences left empty after
    filtering are dropped. Returns ``(ids int32, offsets int64)`` with
    ``offsets`` of length n_sentences+1.
    """
    index = vocab._index
    ids: list[int] = []
    offsets: list[int] = [0]
    for sent in slice_.sentences:
        start = len(ids)
        for tok in sent:
            if tok.normalized is None:
                continue
            wid = index.get(tok.normalized)
            if wid is not None:
                ids.append(wid)
        if len(ids) > start:
            offsets.append(len(ids))
    return np.asarray(ids, dtype=np.int32), np.asarray(offsets, dtype=np.int64)
