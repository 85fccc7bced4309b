"""Cluster partitions of matrix columns and the spectral sandwich.

Columns of a uniform node matrix whose pairwise coherence (the sine-ratio of
their node difference) reaches a threshold are grouped into clusters; small
cross-cluster coherence turns into a near-orthogonality angle, and the block
spectra squeezed through ``sqrt(1 -/+ L*alpha)`` factors bound the true
singular values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AngleConditionError, ClusterSizeError, PreconditionError, RankDeficientError
from .vandermonde import coherence, progression_matrix

__all__ = [
    "ClusterPartition",
    "SpectrumSandwich",
    "default_threshold",
    "partition_by_coherence",
    "cluster_spectrum",
    "sandwich",
    "principal_angle_check",
]


def default_threshold(length: int) -> float:
    """Clustering threshold L*sin(1/L): pairs at or above it share a cluster."""
    return length * math.sin(1.0 / length)


@dataclass(frozen=True)
class ClusterPartition:
    """Connected components of the coherence graph on node indices.

    ``alpha = arcsin(cross_coherence / length)`` is the near-orthogonality
    angle defect; the sandwich needs ``length * alpha < 1``.  ``chained``
    marks components of size > 2 that are not coherence-cliques, for which the
    closed-form cluster spectra are unavailable anyway.
    """

    clusters: tuple[tuple[int, ...], ...]
    nodes: tuple[int, ...]
    spacing: float
    length: int
    threshold: float
    cross_coherence: float
    alpha: float
    chained: bool

    @property
    def max_cluster_size(self) -> int:
        return max(len(c) for c in self.clusters)


def partition_by_coherence(
    nodes: Sequence[int],
    spacing,
    length: int,
    threshold: float | None = None,
) -> ClusterPartition:
    """Group column indices whose pairwise coherence is >= threshold.

    Components are connected components of the thresholded coherence graph
    (ties join a cluster).  Cross-cluster coherence is the maximum over pairs
    in different components; alpha = arcsin(cross / length).
    """
    n = len(nodes)
    if n < 1:
        raise PreconditionError("partition needs at least one node")
    if length < 1:
        raise PreconditionError(f"column length must be >= 1, got {length}")
    tau = default_threshold(length) if threshold is None else float(threshold)
    if not 0.0 < tau < length:
        raise PreconditionError(f"threshold must lie in (0, L)={length}, got {tau}")

    coh = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            coh[i, j] = coh[j, i] = coherence(nodes[i], nodes[j], spacing, length)

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if coh[i, j] >= tau:
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=lambda g: g[0]))

    cross = 0.0
    for a, ca in enumerate(clusters):
        for cb in clusters[a + 1 :]:
            for i in ca:
                for j in cb:
                    cross = max(cross, coh[i, j])
    chained = any(
        len(c) > 2 and any(coh[i, j] < tau for x, i in enumerate(c) for j in c[x + 1 :])
        for c in clusters
    )
    return ClusterPartition(
        clusters=clusters,
        nodes=tuple(int(v) for v in nodes),
        spacing=float(spacing),
        length=length,
        threshold=tau,
        cross_coherence=cross,
        alpha=math.asin(min(cross / length, 1.0)),
        chained=chained,
    )


def cluster_spectrum(partition: ClusterPartition, cluster_index: int) -> tuple[float, ...]:
    """Singular values of one cluster's column block, closed form.

    Size 1 gives (sqrt(L),); size 2 gives sqrt(L +/- |b|) with b the pair
    coherence.  Larger clusters have no closed form here.
    """
    cluster = partition.clusters[cluster_index]
    L = partition.length
    if len(cluster) == 1:
        return (math.sqrt(L),)
    if len(cluster) == 2:
        i, j = cluster
        b = coherence(partition.nodes[i], partition.nodes[j], partition.spacing, L)
        return (math.sqrt(L + b), math.sqrt(max(L - b, 0.0)))
    raise ClusterSizeError(
        f"cluster {cluster_index} has {len(cluster)} columns; closed form stops at 2"
    )


@dataclass(frozen=True)
class SpectrumSandwich:
    """Per-index bounds sqrt(1 -/+ L*alpha) * sigma~_j around cluster spectra."""

    tilde_sigmas: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def contains(self, sigmas: Sequence[float], tol: float = 0.0) -> bool:
        return len(sigmas) == len(self.tilde_sigmas) and all(
            lo - tol <= s <= hi + tol
            for lo, s, hi in zip(self.lower, sorted(sigmas, reverse=True), self.upper)
        )


def sandwich(partition: ClusterPartition) -> SpectrumSandwich:
    """Squeeze the merged cluster spectra into bounds for the true spectrum."""
    L = partition.length
    la = L * partition.alpha
    if la >= 1.0:
        raise AngleConditionError(f"L*alpha = {la:.6g} >= 1: sandwich inapplicable")
    tilde: list[float] = []
    for idx in range(len(partition.clusters)):
        tilde.extend(cluster_spectrum(partition, idx))
    tilde.sort(reverse=True)
    lo = math.sqrt(1.0 - la)
    hi = math.sqrt(1.0 + la)
    return SpectrumSandwich(
        tilde_sigmas=tuple(tilde),
        lower=tuple(lo * t for t in tilde),
        upper=tuple(hi * t for t in tilde),
    )


def principal_angle_check(partition: ClusterPartition) -> float:
    """Exact minimum principal angle between cluster column spans.

    Orthonormalizes each cluster block and takes arccos of the largest
    cross-Gram singular value over all cluster pairs.  With a single cluster
    the constraint is empty and pi/2 is returned.
    """
    matrix = progression_matrix(partition.nodes, partition.spacing, partition.length)
    bases = []
    for cluster in partition.clusters:
        block = matrix.entries[:, list(cluster)]
        q, r = np.linalg.qr(block)
        diag = np.abs(np.diag(r))
        if np.any(diag < 1e-12 * max(1.0, float(diag.max(initial=0.0)))):
            raise RankDeficientError(f"cluster block {cluster} is numerically rank deficient")
        bases.append(q)
    worst = 0.0
    for a in range(len(bases)):
        for b in range(a + 1, len(bases)):
            s = np.linalg.svd(bases[a].conj().T @ bases[b], compute_uv=False)
            worst = max(worst, float(s[0]))
    return math.acos(min(worst, 1.0))
