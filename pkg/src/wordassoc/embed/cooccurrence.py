"""Sparse distance-weighted co-occurrence counts for the GloVe trainer."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..corpus import CorpusSlice, Vocabulary, encode_slice


@dataclass(frozen=True, slots=True)
class CooccurrenceTable:
    """Sparse (center, context) -> weight map in coordinate form.

    Entries are unique (row, col) pairs with strictly positive weights;
    symmetric because every pair is accumulated in both directions.
    """

    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray
    vocab_size: int

    def __post_init__(self) -> None:
        if not (self.rows.shape == self.cols.shape == self.weights.shape):
            raise ValueError("rows, cols, weights must have equal length")
        if self.weights.size and float(self.weights.min()) <= 0:
            raise ValueError("all weights must be > 0")

    def __len__(self) -> int:
        return int(self.rows.shape[0])

    def to_dict(self) -> dict[tuple[int, int], float]:
        """Plain dict view; intended for small tables in tests."""
        return {
            (int(i), int(j)): float(x)
            for i, j, x in zip(self.rows, self.cols, self.weights)
        }


def build_cooccurrence(slice_: CorpusSlice, vocab: Vocabulary, window: int = 5) -> CooccurrenceTable:
    """Accumulate 1/distance weights over in-vocabulary token pairs.

    Distance is measured in surviving (in-vocabulary) token positions
    within one sentence; each unordered pair at distance d <= window
    adds 1/d to both (i,j) and (j,i). An empty slice gives an empty
    table.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    ids, offsets = encode_slice(slice_, vocab)
    n = ids.shape[0]
    if n < 2:
        return _empty_table(len(vocab))
    sent_ids = np.repeat(
        np.arange(offsets.shape[0] - 1, dtype=np.int64), np.diff(offsets)
    )
    centers = ids.astype(np.int64)
    key_parts: list[np.ndarray] = []
    weight_parts: list[np.ndarray] = []
    v = np.int64(len(vocab))
    for d in range(1, window + 1):
        if d >= n:
            break
        same_sentence = sent_ids[:-d] == sent_ids[d:]
        if not same_sentence.any():
            continue
        left = centers[:-d][same_sentence]
        right = centers[d:][same_sentence]
        w = np.full(left.shape[0], 1.0 / d)
        key_parts.append(left * v + right)
        key_parts.append(right * v + left)
        weight_parts.append(w)
        weight_parts.append(w)
    if not key_parts:
        return _empty_table(len(vocab))
    keys = np.concatenate(key_parts)
    weights = np.concatenate(weight_parts)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    weights = weights[order]
    boundaries = np.flatnonzero(np.diff(keys)) + 1
    starts = np.concatenate(([0], boundaries))
    unique_keys = keys[starts]
    summed = np.add.reduceat(weights, starts)
    return CooccurrenceTable(
        rows=(unique_keys // v).astype(np.int32),
        cols=(unique_keys % v).astype(np.int32),
        weights=summed.astype(np.float64),
        vocab_size=len(vocab),
    )


def _empty_table(vocab_size: int) -> CooccurrenceTable:
    return CooccurrenceTable(
        rows=np.empty(0, dtype=np.int32),
        cols=np.empty(0, dtype=np.int32),
        weights=np.empty(0, dtype=np.float64),
        vocab_size=vocab_size,
    )
