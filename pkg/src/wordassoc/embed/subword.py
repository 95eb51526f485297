"""Character n-gram enumeration and bucket hashing for subword vectors."""

from __future__ import annotations

import numpy as np

from .hyperparams import Hyperparams
from ..corpus import Vocabulary

_FNV_OFFSET = 2166136261
_FNV_PRIME = 16777619
_U32 = 0xFFFFFFFF


def fnv1a_hash(gram: str) -> int:
    """32-bit FNV-1a over the UTF-8 bytes of ``gram``.

    Bytes >= 0x80 are sign-extended before the XOR, so multi-byte
    characters hash the same way as in the reference subword
    implementation this mirrors.
    """
    h = _FNV_OFFSET
    for b in gram.encode("utf-8"):
        h ^= (b - 256) & _U32 if b > 0x7F else b
        h = (h * _FNV_PRIME) & _U32
    return h


def char_ngram_strings(word: str, nmin: int, nmax: int) -> list[str]:
    """All substrings of '<word>' with length in [nmin, nmax].

    Enumerated by start position, then length; duplicates kept. The
    boundary markers mean the whole wrapped token appears as one of its
    own n-grams whenever its length falls in range.
    """
    if not word:
        raise ValueError("word must be non-empty")
    if not 1 <= nmin <= nmax:
        raise ValueError(f"need 1 <= nmin <= nmax, got {nmin}..{nmax}")
    wrapped = f"<{word}>"
    total = len(wrapped)
    return [
        wrapped[i:i + n]
        for i in range(total)
        for n in range(nmin, nmax + 1)
        if i + n <= total
    ]


def char_ngrams(word: str, nmin: int, nmax: int, buckets: int) -> list[int]:
    """Bucket ids (each in [0, buckets)) of the word's character n-grams."""
    if buckets < 1:
        raise ValueError(f"buckets must be >= 1, got {buckets}")
    return [fnv1a_hash(g) % buckets for g in char_ngram_strings(word, nmin, nmax)]


def build_subword_table(vocab: Vocabulary, hp: Hyperparams) -> tuple[np.ndarray, np.ndarray]:
    """Bucket ids for every vocabulary word, as one ragged structure.

    Returns ``(gram_ids int32, gram_offsets int64)``: word i's grams are
    ``gram_ids[gram_offsets[i]:gram_offsets[i+1]]``.
    """
    ids: list[int] = []
    offsets = np.empty(len(vocab) + 1, dtype=np.int64)
    offsets[0] = 0
    for i, word in enumerate(vocab):
        ids.extend(char_ngrams(word, hp.ngram_min, hp.ngram_max, hp.buckets))
        offsets[i + 1] = len(ids)
    return np.asarray(ids, dtype=np.int32), offsets
