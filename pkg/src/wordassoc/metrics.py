"""Cluster validity and cross-model agreement measures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .cluster import Clustering, DistanceMatrix
from .errors import DegenerateDiameter, EmptySeries, InvalidK, WordSetMismatch


@dataclass(frozen=True, slots=True)
class DunnResult:
    """min inter-cluster distance over max cluster diameter.

    Inter-cluster distance is single linkage (closest pair across the
    two clusters); diameter is complete linkage (farthest pair inside
    one cluster). Higher values mean compact, well-separated clusters.
    """

    value: float
    min_intercluster: float
    max_diameter: float


@njit(cache=True)
def _dunn_terms(condensed, labels, n, k):
    min_sep = np.inf
    diam = np.zeros(k, np.float64)
    idx = 0
    for i in range(n):
        li = labels[i]
        for j in range(i + 1, n):
            d = condensed[idx]
            idx += 1
            if labels[j] == li:
                if d > diam[li]:
                    diam[li] = d
            else:
                if d < min_sep:
                    min_sep = d
    return min_sep, diam


def dunn_index(clustering: Clustering, distances: DistanceMatrix) -> DunnResult:
    """Dunn's Index of a partition under the given pairwise distances.

    Raises:
        InvalidK: fewer than 2 clusters.
        DegenerateDiameter: every cluster has zero diameter (division
            undefined).
    """
    if clustering.k < 2:
        raise InvalidK(f"Dunn's Index requires k >= 2, got {clustering.k}")
    if distances.n != clustering.size:
        raise ValueError(
            f"distances cover {distances.n} points, clustering has {clustering.size}"
        )
    min_sep, diam = _dunn_terms(
        distances.condensed, clustering.labels, distances.n, clustering.k
    )
    max_diameter = float(diam.max())
    if max_diameter == 0.0:
        raise DegenerateDiameter(
            "all clusters have zero diameter; Dunn's Index is undefined"
        )
    return DunnResult(
        value=float(min_sep) / max_diameter,
        min_intercluster=float(min_sep),
        max_diameter=max_diameter,
    )


@dataclass(frozen=True, slots=True)
class DistributionStats:
    """Cluster population fractions plus their min/mean/max."""

    fractions: np.ndarray
    min: float
    mean: float
    max: float

    def __post_init__(self) -> None:
        if abs(float(self.fractions.sum()) - 1.0) > 1e-12:
            raise ValueError("fractions must sum to 1")
        if not self.min <= self.mean <= self.max:
            raise ValueError("expected min <= mean <= max")


def distribution_stats(clustering: Clustering) -> DistributionStats:
    sizes = clustering.sizes().astype(np.float64)
    fractions = sizes / sizes.sum()
    return DistributionStats(
        fractions=fractions,
        min=float(fractions.min()),
        mean=float(fractions.mean()),
        max=float(fractions.max()),
    )


def jaccard_sets(a: Iterable[str], b: Iterable[str]) -> float:
    """|A intersect B| / |A union B|, with J(empty, empty) defined as 1."""
    sa, sb = frozenset(a), frozenset(b)
    union = len(sa | sb)
    if union == 0:
        return 1.0
    return len(sa & sb) / union


def jaccard_clusterings(ca: Clustering, cb: Clustering) -> float:
    """Mean Jaccard similarity over all ordered cluster pairs.

    With k clusters each, this sums jaccard_sets over all k*k (i, j)
    combinations and divides by k*k, which makes the value invariant to
    how either side numbers its clusters. Identical balanced partitions
    therefore score 1/k, not 1.
    """
    if ca.words is None or cb.words is None:
        raise ValueError("both clusterings must carry words")
    if ca.word_set() != cb.word_set():
        raise WordSetMismatch(
            "clusterings partition different word sets; "
            f"sizes {len(ca.word_set())} vs {len(cb.word_set())}"
        )
    if ca.k != cb.k:
        raise InvalidK(f"cluster counts differ: {ca.k} vs {cb.k}")
    members_a = [ca.members(i) for i in range(ca.k)]
    members_b = [cb.members(j) for j in range(cb.k)]
    total = sum(jaccard_sets(a, b) for a in members_a for b in members_b)
    return total / (ca.k * cb.k)


def average_jaccard(values: Sequence[float]) -> float:
    """Arithmetic mean of one model pair's per-slice similarities."""
    if len(values) == 0:
        raise EmptySeries("no per-slice values to average")
    return float(np.mean(values))


@dataclass(frozen=True, slots=True, eq=False)
class JaccardMatrix:
    """Symmetric model-by-model table of slice-averaged similarities.

    The diagonal is reported as 1.0 by convention (a model agrees with
    itself), bypassing the all-pairs formula that would score 1/k there.
    """

    models: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        m = len(self.models)
        if self.values.shape != (m, m):
            raise ValueError(f"values shape {self.values.shape} does not fit {m} models")
        if m and not np.allclose(self.values, self.values.T, atol=1e-12):
            raise ValueError("matrix must be symmetric")
        if m and (self.values.min() < 0 or self.values.max() > 1):
            raise ValueError("entries must lie in [0, 1]")

    def entry(self, model_a: str, model_b: str) -> float:
        i = self.models.index(model_a)
        j = self.models.index(model_b)
        return float(self.values[i, j])
