"""Tagging backends.

A backend takes batches of tokenized sentences and returns one UPOS
tag per token. The default is the shipped rule lexicon, which needs no
model download and is bit-reproducible; a neural pipeline can be
plugged in through the same factory signature as long as it reports a
pinned version, since the sidecar metadata promises that the same
(version, input) pair regenerates identical output.
"""

from __future__ import annotations

from typing import Protocol

from .errors import ConfigError
from .lexicon import classify


class Backend(Protocol):
    name: str
    version: str
    lang: str

    def tag(self, sentences: list[list[str]]) -> list[list[str]]: ...


class RuleLexiconTagger:
    """Deterministic lexicon-and-suffix tagger for English."""

    name = "rulelex"
    version = "1.0.0"
    lang = "en"

    def __init__(self, batch_size: int = 32):
        if batch_size < 1:
            raise ConfigError(f"batch size must be >= 1, got {batch_size}")
        self.batch_size = batch_size

    def tag(self, sentences: list[list[str]]) -> list[list[str]]:
        tagged: list[list[str]] = []
        for start in range(0, len(sentences), self.batch_size):
            for tokens in sentences[start:start + self.batch_size]:
                tagged.append(
                    [classify(t, sentence_initial=(i == 0))
                     for i, t in enumerate(tokens)]
                )
        return tagged


_BACKENDS = {"en": RuleLexiconTagger}


def make_backend(lang: str, batch_size: int) -> Backend:
    try:
        factory = _BACKENDS[lang]
    except KeyError:
        known = ", ".join(sorted(_BACKENDS))
        raise ConfigError(f"no tagger for language {lang!r}; have {known}") from None
    return factory(batch_size=batch_size)
