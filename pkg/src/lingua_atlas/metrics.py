"""Cluster-overlap metrics for 2-D projections.

Turns "these languages form one cluster / overlap" into numbers: k-NN label
purity per language, mean silhouette, centroid distances, and a list of label
pairs whose restricted pair-purity falls below an overlap threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.spatial.distance import cdist

from .umap import Projection


class MetricsError(Exception):
    """Raised when a projection cannot support the requested metric."""


@dataclass
class ClusterReport:
    purity: dict[str, float]
    silhouette: float
    labels: list[str]
    centroid_dist: np.ndarray  # (L, L), symmetric, zero diagonal
    overlapping_pairs: list[tuple[str, str, float]]


def _as_arrays(proj: Projection) -> tuple[np.ndarray, np.ndarray]:
    coords = np.asarray(proj.coords, dtype=np.float64)
    labels = np.asarray(proj.labels)
    if coords.ndim != 2 or coords.shape[0] != labels.shape[0]:
        raise MetricsError("projection coords/labels mismatch")
    return coords, labels


def _neighbor_matrix(coords: np.ndarray, k: int) -> np.ndarray:
    dist = cdist(coords, coords, "euclidean")
    np.fill_diagonal(dist, np.inf)
    return np.argsort(dist, axis=1, kind="stable")[:, :k]


def knn_label_purity(proj: Projection, k: int = 10) -> dict[str, float]:
    """Per-label mean fraction of each point's k nearest 2-D neighbors (self
    excluded, ties by smaller index) that share its label."""
    coords, labels = _as_arrays(proj)
    uniq, counts = np.unique(labels, return_counts=True)
    for label, count in zip(uniq, counts):
        if count <= k:
            raise MetricsError(f"label has too few points for k={k}: {label}")
    neighbors = _neighbor_matrix(coords, k)
    same = labels[neighbors] == labels[:, None]
    frac = same.mean(axis=1)
    return {str(label): float(frac[labels == label].mean()) for label in uniq}


def silhouette(proj: Projection) -> float:
    """Mean euclidean silhouette; points in singleton clusters score 0."""
    coords, labels = _as_arrays(proj)
    uniq = np.unique(labels)
    if len(uniq) < 2:
        raise MetricsError("silhouette needs at least 2 labels")
    dist = cdist(coords, coords, "euclidean")
    masks = {label: labels == label for label in uniq}
    scores = np.zeros(len(labels), dtype=np.float64)
    for i, label in enumerate(labels):
        own = masks[label]
        n_own = own.sum()
        if n_own == 1:
            continue  # singleton: s = 0
        a = dist[i, own].sum() / (n_own - 1)
        b = min(dist[i, masks[other]].mean() for other in uniq if other != label)
        denom = max(a, b)
        scores[i] = (b - a) / denom if denom > 0.0 else 0.0
    return float(scores.mean())


def centroid_distances(proj: Projection) -> tuple[list[str], np.ndarray]:
    """Euclidean distances between per-label coordinate means; labels in
    lexicographic order. The matrix is exactly symmetric."""
    coords, labels = _as_arrays(proj)
    uniq = sorted(str(u) for u in np.unique(labels))
    centroids = np.stack([coords[labels == u].mean(axis=0) for u in uniq])
    n = len(uniq)
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            d = float(np.sqrt(((centroids[i] - centroids[j]) ** 2).sum()))
            out[i, j] = d
            out[j, i] = d
    return uniq, out


def pair_purity(proj: Projection, label_a: str, label_b: str, k: int = 10) -> float:
    """knn_label_purity restricted to points of two labels, averaged over the
    two per-label values. Symmetric in its label arguments."""
    coords, labels = _as_arrays(proj)
    mask = (labels == label_a) | (labels == label_b)
    sub = Projection(coords[mask], [str(x) for x in labels[mask]])
    purity = knn_label_purity(sub, k)
    return 0.5 * (purity[str(label_a)] + purity[str(label_b)])


def overlap_report(proj: Projection, k: int = 10, threshold: float = 0.7) -> ClusterReport:
    """Purity, silhouette and centroid distances, plus every label pair whose
    restricted pair-purity falls below `threshold`."""
    purity = knn_label_purity(proj, k)
    sil = silhouette(proj)
    labels, centroid = centroid_distances(proj)
    overlapping = []
    for la, lb in combinations(labels, 2):
        pp = pair_purity(proj, la, lb, k)
        if pp < threshold:
            overlapping.append((la, lb, pp))
    return ClusterReport(purity, sil, labels, centroid, overlapping)
