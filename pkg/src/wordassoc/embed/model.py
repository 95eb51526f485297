"""Trained embedding container and its text serialization."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterator

import numpy as np

from .hyperparams import Hyperparams
from ..corpus import Vocabulary
from ..errors import DimensionMismatch, MalformedHeader, MalformedRecord, NumericError

KINDS = ("word2vec", "glove", "fasttext")
FLAVORS = ("cbow", "skipgram")

#: selector string -> (kind, flavor); flavor None for the factorization model.
SELECTOR_PARTS: dict[str, tuple[str, str | None]] = {
    "w2v-cbow": ("word2vec", "cbow"),
    "w2v-sg": ("word2vec", "skipgram"),
    "glove": ("glove", None),
    "ft-cbow": ("fasttext", "cbow"),
    "ft-sg": ("fasttext", "skipgram"),
}

_PARTS_SELECTOR = {parts: sel for sel, parts in SELECTOR_PARTS.items()}


@dataclass(frozen=True, slots=True, eq=False)
class EmbeddingModel:
    """Immutable V x d float32 matrix with one row per word.

    kind/flavor/vocab/hyperparams are present on freshly trained models
    and absent (None) on models read back from disk, where the text
    format carries only words and vectors.
    """

    words: tuple[str, ...]
    matrix: np.ndarray
    kind: str | None = None
    flavor: str | None = None
    vocab: Vocabulary | None = None
    hyperparams: Hyperparams | None = None
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.matrix.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        if len(self.words) != self.matrix.shape[0]:
            raise ValueError(
                f"{len(self.words)} words but {self.matrix.shape[0]} matrix rows"
            )
        if self.matrix.dtype != np.float32:
            raise ValueError(f"matrix must be float32, got {self.matrix.dtype}")
        if not np.isfinite(self.matrix).all():
            raise NumericError("embedding matrix contains NaN or Inf")
        if self.kind is not None and self.kind not in KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.flavor is not None and self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.kind == "glove" and self.flavor is not None:
            raise ValueError("the factorization model has no cbow/skipgram flavor")
        if self.kind in ("word2vec", "fasttext") and self.flavor is None:
            raise ValueError(f"{self.kind} requires a cbow/skipgram flavor")
        if self.vocab is not None and self.vocab.words != self.words:
            raise ValueError("vocab words disagree with model words")
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.words)})
        if len(self._index) != len(self.words):
            raise ValueError("duplicate word in model")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def dimension(self) -> int:
        return self.matrix.shape[1]

    @property
    def selector(self) -> str | None:
        if self.kind is None:
            return None
        return _PARTS_SELECTOR[(self.kind, self.flavor)]

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def vector(self, word: str) -> np.ndarray:
        return self.matrix[self._index[word]]

    def rows_for(self, words: list[str] | tuple[str, ...]) -> np.ndarray:
        """Stacked vectors in the given word order."""
        return self.matrix[[self._index[w] for w in words]]


def _write_lines(model: EmbeddingModel) -> Iterator[str]:
    yield f"{model.size} {model.dimension}"
    for word, row in zip(model.words, model.matrix):
        yield word + " " + " ".join(f"{v:.6g}" for v in row)


def write_embeddings(model: EmbeddingModel, sink: str | Path | IO[str]) -> None:
    """Text format: header "V d", then one `word v1 .. vd` line per word
    with 6 significant digits (round-trips within 1e-5 per coordinate)."""
    if isinstance(sink, (str, Path)):
        with Path(sink).open("w", encoding="utf-8") as fh:
            for line in _write_lines(model):
                fh.write(line + "\n")
    else:
        for line in _write_lines(model):
            sink.write(line + "\n")


def read_embeddings(source: str | Path | IO[str]) -> EmbeddingModel:
    """Read the write_embeddings format.

    The result carries words and vectors only (kind/flavor/vocab are not
    stored in the format and come back as None).

    Raises:
        MalformedHeader: first line is not two positive integers.
        DimensionMismatch: row length or row count disagrees with header.
        MalformedRecord: duplicate word.
    """
    if isinstance(source, (str, Path)):
        with Path(source).open("r", encoding="utf-8") as fh:
            return _read_stream(fh, str(source))
    return _read_stream(source, "<stream>")


def _read_stream(fh: IO[str], name: str) -> EmbeddingModel:
    header = fh.readline()
    parts = header.split()
    if len(parts) != 2:
        raise MalformedHeader(f"{name}: header must be 'V d', got {header.strip()!r}")
    try:
        v, d = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise MalformedHeader(f"{name}: non-integer header {header.strip()!r}") from exc
    if v < 1 or d < 1:
        raise MalformedHeader(f"{name}: header values must be positive, got {v} {d}")
    words: list[str] = []
    matrix = np.empty((v, d), dtype=np.float32)
    seen: set[str] = set()
    row = 0
    for line in fh:
        if not line.strip():
            continue
        fields = line.split()
        if row >= v:
            raise DimensionMismatch(f"{name}: more than {v} rows")
        if len(fields) != d + 1:
            raise DimensionMismatch(
                f"{name}: row {row} has {len(fields) - 1} values, expected {d}"
            )
        word = fields[0]
        if word in seen:
            raise MalformedRecord(f"{name}: duplicate word {word!r}")
        seen.add(word)
        words.append(word)
        matrix[row] = np.asarray(fields[1:], dtype=np.float32)
        row += 1
    if row != v:
        raise DimensionMismatch(f"{name}: header promises {v} rows, found {row}")
    return EmbeddingModel(words=tuple(words), matrix=matrix)
