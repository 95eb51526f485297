"""Deterministic sentence splitting and tokenization.

Rule-based on purpose: the same bytes in always give the same tokens
out, which is what makes re-tagging reproducible. Sentences end at
., ! or ? followed by whitespace; paragraphs (blank lines) always
terminate a sentence. Tokens are runs of letters (with one internal
apostrophe allowed), runs of digits (with one internal point), or a
single other non-space character.
"""

from __future__ import annotations

import re

_PARAGRAPH = re.compile(r"\n\s*\n")
_SENTENCE_END = re.compile(r"(?<=[.!?])\s+")
_TOKEN = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?|\d+(?:\.\d+)?|[^\sA-Za-z\d]")


def split_sentences(text: str) -> list[str]:
    sentences = []
    for block in _PARAGRAPH.split(text):
        block = " ".join(block.split())
        if not block:
            continue
        sentences.extend(s for s in _SENTENCE_END.split(block) if s)
    return sentences


def tokenize(sentence: str) -> list[str]:
    return _TOKEN.findall(sentence)


def tokenize_document(text: str) -> list[list[str]]:
    """Sentences as token lists, empty sentences dropped."""
    out = []
    for sentence in split_sentences(text):
        tokens = tokenize(sentence)
        if tokens:
            out.append(tokens)
    return out
