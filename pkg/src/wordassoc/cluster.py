"""Ward agglomerative clustering of word vectors in cosine geometry.

Vectors are L2-normalized first; on the unit sphere squared Euclidean
distance equals exactly 2x cosine distance, so Ward's variance
criterion and the cosine proximity measure coexist without compromise.
Merges come from the nearest-neighbor-chain algorithm and are then
re-ordered by cost and relabeled, which makes the output independent of
the chain's discovery order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .errors import InvalidK, ZeroVector


def cosine_distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - cos(u, v). Mathematical range [0, 2]; no clamping applied."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError("u and v must be vectors of equal dimension")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine distance undefined for a zero vector")
    return 1.0 - float(np.dot(u, v)) / (nu * nv)


@dataclass(frozen=True, slots=True, eq=False)
class DistanceMatrix:
    """Condensed upper-triangular pairwise distances over n points."""

    n: int
    condensed: np.ndarray

    def __post_init__(self) -> None:
        expected = self.n * (self.n - 1) // 2
        if self.condensed.shape != (expected,):
            raise ValueError(
                f"condensed length {self.condensed.shape} does not fit n={self.n}"
            )
        if expected and not np.isfinite(self.condensed).all():
            raise ValueError("distances must be finite")
        if expected and float(self.condensed.min()) < 0:
            raise ValueError("distances must be non-negative")

    def get(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        if i > j:
            i, j = j, i
        return float(self.condensed[i * self.n - (i * (i + 1)) // 2 + (j - i - 1)])

    def to_square(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.float64)
        iu = np.triu_indices(self.n, k=1)
        out[iu] = self.condensed
        return out + out.T


def _normalized_rows(vectors: np.ndarray) -> np.ndarray:
    x = np.asarray(vectors, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("vectors must be a 2-d matrix")
    norms = np.linalg.norm(x, axis=1)
    zero = np.flatnonzero(norms == 0)
    if zero.size:
        raise ZeroVector(f"row {int(zero[0])} is a zero vector")
    return x / norms[:, None]


def pairwise_cosine(vectors: np.ndarray) -> DistanceMatrix:
    """Condensed cosine distances for all row pairs.

    Tiny negative values from float rounding of same-direction pairs are
    clipped to 0 so the matrix honors its non-negativity invariant.
    """
    x = _normalized_rows(vectors)
    m = x.shape[0]
    if m < 2:
        raise ValueError(f"need at least 2 rows, got {m}")
    gram = x @ x.T
    iu = np.triu_indices(m, k=1)
    condensed = np.maximum(1.0 - gram[iu], 0.0)
    return DistanceMatrix(n=m, condensed=condensed)


@dataclass(frozen=True, slots=True, eq=False)
class Dendrogram:
    """Canonical merge table: n-1 rows of (left, right, cost, size).

    Row t merges the clusters labeled left < right into a new cluster
    labeled n_leaves + t; leaves are 0..n_leaves-1. Rows are ordered by
    non-decreasing cost.
    """

    n_leaves: int
    merges: np.ndarray

    def __post_init__(self) -> None:
        if self.n_leaves < 1:
            raise ValueError("need at least one leaf")
        if self.merges.shape != (self.n_leaves - 1, 4):
            raise ValueError(
                f"merges shape {self.merges.shape} does not fit {self.n_leaves} leaves"
            )

    @property
    def costs(self) -> np.ndarray:
        return self.merges[:, 2]


@njit(cache=True)
def _cidx(i, j, n):
    # condensed index, requires i < j
    return i * n - (i * (i + 1)) // 2 + (j - i - 1)


@njit(cache=True)
def _nn_chain(dsq, n):
    """Ward merges over condensed squared distances (mutated in place).

    Returns (n-1, 3) rows (slot_x, slot_y, cost_squared) in discovery
    order. Slots are leaf indices; after a merge the new cluster lives
    in the higher slot and the lower slot dies, so any leaf index still
    resolves to the cluster that currently contains it.
    """
    size = np.ones(n, np.int64)
    chain = np.empty(n, np.int64)
    chain_len = 0
    raw = np.empty((n - 1, 3), np.float64)
    for t in range(n - 1):
        if chain_len == 0:
            for i in range(n):
                if size[i] > 0:
                    chain[0] = i
                    chain_len = 1
                    break
        while True:
            x = chain[chain_len - 1]
            y = -1
            mind = np.inf
            if chain_len > 1:
                y = chain[chain_len - 2]
                lo, hi = (x, y) if x < y else (y, x)
                mind = dsq[_cidx(lo, hi, n)]
            for i in range(n):
                if size[i] == 0 or i == x:
                    continue
                lo, hi = (x, i) if x < i else (i, x)
                d = dsq[_cidx(lo, hi, n)]
                if d < mind:
                    mind = d
                    y = i
            if chain_len > 1 and y == chain[chain_len - 2]:
                break
            chain[chain_len] = y
            chain_len += 1
        chain_len -= 2
        if x > y:
            x, y = y, x
        nx = size[x]
        ny = size[y]
        raw[t, 0] = x
        raw[t, 1] = y
        raw[t, 2] = mind
        size[x] = 0
        size[y] = nx + ny
        for i in range(n):
            ni = size[i]
            if ni == 0 or i == y:
                continue
            lo, hi = (i, x) if i < x else (x, i)
            d_ix = dsq[_cidx(lo, hi, n)]
            lo, hi = (i, y) if i < y else (y, i)
            d_iy = dsq[_cidx(lo, hi, n)]
            dsq[_cidx(lo, hi, n)] = (
                (nx + ni) * d_ix + (ny + ni) * d_iy - ni * mind
            ) / (nx + ny + ni)
    return raw


class _UnionFind:
    """Merge-labeling: roots of merged clusters get labels n, n+1, ..."""

    def __init__(self, n: int):
        self.parent = np.arange(2 * n - 1, dtype=np.int64)
        self.size = np.ones(2 * n - 1, dtype=np.int64)
        self.next_label = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = int(self.parent[root])
        while self.parent[x] != root:
            self.parent[x], x = root, int(self.parent[x])
        return root

    def merge(self, x: int, y: int) -> int:
        label = self.next_label
        self.parent[x] = self.parent[y] = label
        self.size[label] = self.size[x] + self.size[y]
        self.next_label += 1
        return int(self.size[label])


def _canonical_merges(raw: np.ndarray, n: int) -> np.ndarray:
    order = np.argsort(raw[:, 2], kind="stable")
    rows = raw[order]
    uf = _UnionFind(n)
    out = np.empty((n - 1, 4), dtype=np.float64)
    for t in range(n - 1):
        la = uf.find(int(rows[t, 0]))
        lb = uf.find(int(rows[t, 1]))
        if la > lb:
            la, lb = lb, la
        out[t, 0] = la
        out[t, 1] = lb
        out[t, 2] = np.sqrt(max(rows[t, 2], 0.0))
        out[t, 3] = uf.merge(la, lb)
    return out


def ward_dendrogram(vectors: np.ndarray) -> Dendrogram:
    """Cluster rows bottom-up under Ward linkage in cosine geometry.

    Exact ties between merge costs resolve to the smallest (left, right)
    label pair, making the result deterministic.
    """
    x = _normalized_rows(vectors)
    m = x.shape[0]
    if m < 2:
        raise ValueError(f"need at least 2 rows to cluster, got {m}")
    gram = x @ x.T
    iu = np.triu_indices(m, k=1)
    dsq = np.maximum(2.0 * (1.0 - gram[iu]), 0.0)
    raw = _nn_chain(dsq, m)
    return Dendrogram(n_leaves=m, merges=_canonical_merges(raw, m))


@dataclass(frozen=True, slots=True, eq=False)
class Clustering:
    """Partition of n points (optionally named) into k non-empty clusters.

    labels[i] is the cluster id of point i, in 0..k-1; ids are assigned
    by ascending smallest member index, so equal partitions always carry
    equal labels.
    """

    k: int
    labels: np.ndarray
    words: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidK(f"k must be >= 1, got {self.k}")
        if self.labels.ndim != 1 or self.labels.shape[0] == 0:
            raise ValueError("labels must be a non-empty vector")
        counts = np.bincount(self.labels, minlength=self.k)
        if counts.shape[0] != self.k or (counts == 0).any():
            raise ValueError(f"labels do not form {self.k} non-empty clusters")
        if self.words is not None:
            if len(self.words) != self.labels.shape[0]:
                raise ValueError("words and labels length mismatch")
            if len(set(self.words)) != len(self.words):
                raise ValueError("duplicate word in clustering")

    @property
    def size(self) -> int:
        return int(self.labels.shape[0])

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def member_indices(self, cluster_id: int) -> np.ndarray:
        return np.flatnonzero(self.labels == cluster_id)

    def members(self, cluster_id: int) -> frozenset[str]:
        if self.words is None:
            raise ValueError("clustering carries no words")
        return frozenset(self.words[i] for i in self.member_indices(cluster_id))

    def word_set(self) -> frozenset[str]:
        if self.words is None:
            raise ValueError("clustering carries no words")
        return frozenset(self.words)


def cut_dendrogram(dendrogram: Dendrogram, k: int,
                   words: Sequence[str] | None = None) -> Clustering:
    """Partition into k clusters by undoing the last k-1 merges.

    Cluster ids are renumbered 0..k-1 in order of each cluster's
    smallest member index.
    """
    n = dendrogram.n_leaves
    if k < 1 or k > n:
        raise InvalidK(f"k must be in 1..{n}, got {k}")
    parent = np.arange(n + (n - k), dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = int(parent[root])
        while parent[x] != root:
            parent[x], x = root, int(parent[x])
        return root

    for t in range(n - k):
        la = find(int(dendrogram.merges[t, 0]))
        lb = find(int(dendrogram.merges[t, 1]))
        parent[la] = parent[lb] = n + t
    labels = np.empty(n, dtype=np.int32)
    relabel: dict[int, int] = {}
    for i in range(n):
        root = find(i)
        if root not in relabel:
            relabel[root] = len(relabel)
        labels[i] = relabel[root]
    return Clustering(k=k, labels=labels,
                      words=None if words is None else tuple(words))
