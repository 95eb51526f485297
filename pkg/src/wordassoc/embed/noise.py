"""Unigram noise distribution for negative sampling, plus subsampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..corpus import Vocabulary


@dataclass(frozen=True, slots=True)
class NoiseDistribution:
    """Sampling table over vocabulary ids.

    ``cumulative`` is the inclusive prefix sum of ``probabilities`` with
    the last entry pinned to exactly 1.0, so a uniform draw u in [0,1)
    maps to the smallest id whose cumulative value exceeds u.
    """

    probabilities: np.ndarray
    cumulative: np.ndarray

    def __post_init__(self) -> None:
        p = self.probabilities
        if p.ndim != 1 or p.shape[0] == 0:
            raise ValueError("probabilities must be a non-empty vector")
        if not np.all(p > 0):
            raise ValueError("all probabilities must be > 0")
        if abs(float(p.sum()) - 1.0) > 1e-9:
            raise ValueError("probabilities must sum to 1")
        if self.cumulative.shape != p.shape or self.cumulative[-1] != 1.0:
            raise ValueError("cumulative table is inconsistent")

    def __len__(self) -> int:
        return int(self.probabilities.shape[0])

    def sample_id(self, u: float) -> int:
        """Id for one uniform draw u in [0,1); mainly for tests."""
        return int(np.searchsorted(self.cumulative, u, side="right"))


def build_noise_distribution(vocab: Vocabulary, power: float = 0.75) -> NoiseDistribution:
    """p(w) proportional to frequency(w) ** power; power 0 gives uniform."""
    if power < 0:
        raise ValueError(f"power must be >= 0, got {power}")
    weights = np.asarray(vocab.counts, dtype=np.float64) ** power
    probs = weights / weights.sum()
    cum = np.cumsum(probs)
    cum[-1] = 1.0
    return NoiseDistribution(probabilities=probs, cumulative=cum)


def keep_probabilities(counts: np.ndarray, threshold: float | None) -> np.ndarray:
    """Per-id keep probability for frequent-word subsampling.

    With corpus fraction f and threshold t the keep probability is
    (sqrt(f/t) + 1) * t/f, capped at 1. A None or zero threshold keeps
    everything (all ones), so no randomness is consumed downstream.
    """
    counts = np.asarray(counts, dtype=np.float64)
    if threshold is None or threshold == 0:
        return np.ones_like(counts)
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    frac = counts / counts.sum()
    keep = (np.sqrt(frac / threshold) + 1.0) * (threshold / frac)
    return np.minimum(keep, 1.0)
