"""From-scratch UMAP: exact kNN graph, smooth-kNN calibration, fuzzy
simplicial set, membership-curve fit, spectral/random initialization, and SGD
layout optimization.

Everything is deterministic for a given seed: brute-force neighbor search with
index tie-breaking, bisection calibration, a fixed-order edge schedule, and
splitmix64 streams for every random choice. The optimization inner loop runs
in the kernel backend (compiled when available).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from . import _kernels
from ._kernels.rng import (
    STREAM_INIT,
    STREAM_LAYOUT,
    STREAM_SPECTRAL,
    advance,
    derive_state,
    fill_floats,
)
from .embed import SentenceMatrix

log = logging.getLogger(__name__)

SIGMA_LO = 1e-3
SIGMA_HI = 1e6
AB_LO = 1e-3
AB_HI = 10.0


class ProjectionError(Exception):
    """Raised for invalid projection parameters or degenerate inputs."""


@dataclass
class UmapParams:
    n_neighbors: int = 15
    min_dist: float = 0.1
    spread: float = 1.0
    n_epochs: int = 500
    learning_rate: float = 1.0
    negative_sample_rate: int = 5
    metric: str = "cosine"  # cosine | euclidean
    init: str = "spectral"  # spectral | random
    seed: int = 0
    a: float | None = None
    b: float | None = None

    def validate(self) -> None:
        if self.n_neighbors < 2:
            raise ProjectionError("n_neighbors must be >= 2")
        if self.min_dist < 0 or self.spread <= 0:
            raise ProjectionError("min_dist must be >= 0 and spread > 0")
        if self.n_epochs < 0 or self.negative_sample_rate < 0:
            raise ProjectionError("invalid optimization budget")
        if self.metric not in ("cosine", "euclidean"):
            raise ProjectionError(f"unknown metric: {self.metric}")
        if self.init not in ("spectral", "random"):
            raise ProjectionError(f"unknown init: {self.init}")


@dataclass
class KnnGraph:
    indices: np.ndarray  # (n, k) int64
    distances: np.ndarray  # (n, k) float64, ascending per row


@dataclass
class SmoothKnn:
    rho: np.ndarray
    sigma: np.ndarray


class FuzzyGraph:
    """Symmetric sparse membership weights, stored once per unordered pair."""

    def __init__(self, n: int, rows: np.ndarray, cols: np.ndarray, weights: np.ndarray):
        self.n = n
        self.rows = rows
        self.cols = cols
        self.weights = weights
        self._lookup = {
            (int(i), int(j)): float(w) for i, j, w in zip(rows, cols, weights)
        }

    @property
    def n_edges(self) -> int:
        return len(self.weights)

    def weight(self, i: int, j: int) -> float:
        key = (i, j) if i < j else (j, i)
        return self._lookup.get(key, 0.0)

    def directed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Both orientations of every edge, sorted by (head, tail)."""
        heads = np.concatenate([self.rows, self.cols])
        tails = np.concatenate([self.cols, self.rows])
        weights = np.concatenate([self.weights, self.weights])
        order = np.lexsort((tails, heads))
        return heads[order], tails[order], weights[order]


@dataclass
class Projection:
    coords: np.ndarray  # (n, 2)
    labels: list[str]


def pairwise_distances(data: np.ndarray, metric: str) -> np.ndarray:
    """Dense all-pairs distances. Cosine treats zero vectors as distance 1
    from everything; distances are clamped to be nonnegative."""
    data = np.asarray(data, dtype=np.float64)
    if metric == "euclidean":
        return cdist(data, data, "euclidean")
    if metric == "cosine":
        norms = np.sqrt((data * data).sum(axis=1))
        safe = np.where(norms > 0.0, norms, 1.0)
        unit = data / safe[:, None]
        dist = 1.0 - unit @ unit.T
        np.maximum(dist, 0.0, out=dist)
        return dist
    raise ProjectionError(f"unknown metric: {metric}")


def knn_exact(
    matrix: SentenceMatrix | np.ndarray, k: int, metric: str = "cosine"
) -> KnnGraph:
    """Brute-force k nearest neighbors; self excluded, distance ties broken by
    smaller index."""
    data = matrix.rows if isinstance(matrix, SentenceMatrix) else matrix
    n = data.shape[0]
    if k >= n:
        raise ProjectionError(f"n_neighbors={k} must be < n={n}")
    dist = pairwise_distances(data, metric)
    np.fill_diagonal(dist, np.inf)
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    return KnnGraph(order.astype(np.int64), np.take_along_axis(dist, order, axis=1))


def smooth_knn(dist_row: Sequence[float] | np.ndarray, k: int) -> tuple[float, float]:
    """Per-point calibration (rho, sigma).

    rho is the smallest strictly positive distance (0 if all are zero); sigma
    solves sum_i exp(-max(0, d_i - rho)/sigma) = log2(k) by 64 bisection steps
    on [1e-3, 1e6], clamping to the violated bound when unreachable.
    """
    dists = [float(d) for d in dist_row]
    rho = 0.0
    for d in dists:
        if d > 0.0:
            rho = d
            break
    target = math.log2(k)

    def membership_sum(sigma: float) -> float:
        total = 0.0
        for d in dists:
            gap = d - rho
            total += math.exp(-gap / sigma) if gap > 0.0 else 1.0
        return total

    lo, hi = SIGMA_LO, SIGMA_HI
    if membership_sum(lo) >= target:
        return rho, lo
    if membership_sum(hi) <= target:
        return rho, hi
    mid = 0.5 * (lo + hi)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if membership_sum(mid) < target:
            lo = mid
        else:
            hi = mid
    return rho, mid


def calibrate_knn(knn: KnnGraph) -> SmoothKnn:
    """smooth_knn applied to every row of a KnnGraph."""
    n, k = knn.distances.shape
    rho = np.empty(n, dtype=np.float64)
    sigma = np.empty(n, dtype=np.float64)
    for i in range(n):
        rho[i], sigma[i] = smooth_knn(knn.distances[i], k)
    return SmoothKnn(rho, sigma)


def fuzzy_simplicial_set(knn: KnnGraph, smooth: SmoothKnn) -> FuzzyGraph:
    """Directed weights exp(-max(0, d_ij - rho_i)/sigma_i) symmetrized by the
    probabilistic union w + w' - w*w'. Edges whose union underflows to zero
    are dropped (they could never be sampled)."""
    n, k = knn.indices.shape
    directed: dict[tuple[int, int], float] = {}
    for i in range(n):
        rho_i = smooth.rho[i]
        sigma_i = smooth.sigma[i]
        for idx in range(k):
            j = int(knn.indices[i, idx])
            gap = knn.distances[i, idx] - rho_i
            directed[(i, j)] = math.exp(-gap / sigma_i) if gap > 0.0 else 1.0

    merged: dict[tuple[int, int], float] = {}
    for (i, j), w in directed.items():
        key = (i, j) if i < j else (j, i)
        if key in merged:
            continue
        w_back = directed.get((j, i), 0.0)
        # factored probabilistic union w + w' - w*w'; exact when either side is 1
        mu = w + w_back * (1.0 - w)
        if mu > 0.0:
            merged[key] = mu

    keys = sorted(merged)
    rows = np.array([ij[0] for ij in keys], dtype=np.int64)
    cols = np.array([ij[1] for ij in keys], dtype=np.int64)
    weights = np.array([merged[ij] for ij in keys], dtype=np.float64)
    return FuzzyGraph(n, rows, cols, weights)


def _curve(d: np.ndarray, a: float, b: float) -> np.ndarray:
    return 1.0 / (1.0 + a * d ** (2.0 * b))


def _target_membership(d: np.ndarray, min_dist: float, spread: float) -> np.ndarray:
    return np.where(d <= min_dist, 1.0, np.exp(-(d - min_dist) / spread))


def _golden_min(f, lo: float, hi: float, iters: int = 100) -> float:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def fit_ab(min_dist: float, spread: float) -> tuple[float, float]:
    """Least-squares fit of 1/(1 + a d^(2b)) to the target membership curve on
    300 equispaced samples in (0, 3*spread]: coarse grid then coordinate
    descent to relative step < 1e-6."""
    if min_dist < 0 or spread <= 0:
        raise ProjectionError("min_dist must be >= 0 and spread > 0")
    d = (np.arange(1, 301, dtype=np.float64) / 300.0) * (3.0 * spread)
    psi = _target_membership(d, min_dist, spread)

    def loss(a: float, b: float) -> float:
        r = _curve(d, a, b) - psi
        return float(r @ r)

    grid = np.geomspace(AB_LO, AB_HI, 48)
    best_loss = math.inf
    a = b = 1.0
    for ga in grid:
        for gb in grid:
            cur = loss(ga, gb)
            if cur < best_loss:
                best_loss, a, b = cur, float(ga), float(gb)

    for _ in range(200):
        a_new = _golden_min(
            lambda x: loss(x, b), max(a / 3.0, AB_LO), min(a * 3.0, AB_HI)
        )
        b_new = _golden_min(
            lambda x: loss(a_new, x), max(b / 3.0, AB_LO), min(b * 3.0, AB_HI)
        )
        step = max(abs(a_new - a) / a, abs(b_new - b) / b)
        a, b = a_new, b_new
        if step < 1e-6:
            break
    return a, b


def _union_find_connected(n: int, rows: np.ndarray, cols: np.ndarray) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = n
    for i, j in zip(rows.tolist(), cols.tolist()):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            components -= 1
    return components == 1


def _random_layout(n: int, seed: int) -> np.ndarray:
    u = fill_floats(derive_state(seed, STREAM_INIT), 2 * n)
    return (u.reshape(n, 2) * 20.0) - 10.0


def _spectral_layout(graph: FuzzyGraph, seed: int) -> np.ndarray | None:
    """Eigenvectors 2 and 3 of the symmetric normalized Laplacian via power
    iteration with deflation on the spectrally shifted operator. Returns None
    on disconnection or non-convergence."""
    from scipy.sparse import coo_matrix

    n = graph.n
    if n < 3 or graph.n_edges == 0:
        return None
    if not _union_find_connected(n, graph.rows, graph.cols):
        return None

    rows = np.concatenate([graph.rows, graph.cols])
    cols = np.concatenate([graph.cols, graph.rows])
    weights = np.concatenate([graph.weights, graph.weights])
    adj = coo_matrix((weights, (rows, cols)), shape=(n, n)).tocsr()
    deg = np.asarray(adj.sum(axis=1)).ravel()
    if (deg <= 0.0).any():
        return None
    dinv = 1.0 / np.sqrt(deg)

    def shifted_matvec(v: np.ndarray) -> np.ndarray:
        # 2I - L_sym = I + D^-1/2 A D^-1/2, largest eigenpairs <-> smallest of L
        return v + dinv * (adj @ (dinv * v))

    v1 = np.sqrt(deg)
    v1 /= np.sqrt(v1 @ v1)
    basis = [v1]
    out = []
    state = derive_state(seed, STREAM_SPECTRAL)
    for _ in range(2):
        v = fill_floats(state, n) * 2.0 - 1.0
        state = advance(state, n)
        for u in basis:
            v -= (u @ v) * u
        nv = np.sqrt(v @ v)
        if nv == 0.0:
            return None
        v /= nv
        converged = False
        for _ in range(5000):
            w = shifted_matvec(v)
            for u in basis:
                w -= (u @ w) * u
            nw = np.sqrt(w @ w)
            if nw == 0.0:
                return None
            w /= nw
            if np.sqrt(((w - v) ** 2).sum()) < 1e-8:
                v = w
                converged = True
                break
            v = w
        if not converged:
            log.info("spectral power iteration did not converge in 5000 steps")
            return None
        basis.append(v)
        out.append(v)

    coords = np.column_stack(out)
    peak = np.abs(coords).max()
    if peak == 0.0:
        return None
    return coords * (10.0 / peak)


def initialize_layout(graph: FuzzyGraph, params: UmapParams) -> tuple[np.ndarray, bool]:
    """Initial 2-D coordinates plus a flag telling whether a requested
    spectral init fell back to random."""
    if params.init == "random":
        return _random_layout(graph.n, params.seed), False
    coords = _spectral_layout(graph, params.seed)
    if coords is None:
        log.warning("spectral initialization failed; falling back to random")
        return _random_layout(graph.n, params.seed), True
    return coords, False


def optimize_layout(
    coords: np.ndarray,
    graph: FuzzyGraph,
    params: UmapParams,
    ab: tuple[float, float] | None = None,
) -> np.ndarray:
    """SGD over the fuzzy graph: edges fire with frequency proportional to
    their weight; attraction moves both endpoints, each firing also repels the
    head from negative_sample_rate random points."""
    a, b = ab if ab is not None else _resolve_ab(params)
    out = np.array(coords, dtype=np.float64, order="C", copy=True)
    if params.n_epochs == 0:
        return out
    if graph.n_edges == 0:
        # Repulsion-only degenerate mode: self-edges fire every epoch, their
        # attraction is a no-op at distance zero, so each point just receives
        # its negative samples. Unreachable from real kNN graphs.
        n = out.shape[0]
        heads = tails = np.arange(n, dtype=np.int64)
        epochs_per_sample = np.ones(n, dtype=np.float64)
    else:
        heads, tails, weights = graph.directed()
        epochs_per_sample = weights.max() / weights
    _kernels.optimize_layout(
        out,
        heads,
        tails,
        epochs_per_sample,
        a,
        b,
        params.learning_rate,
        params.n_epochs,
        params.negative_sample_rate,
        derive_state(params.seed, STREAM_LAYOUT),
    )
    if not np.isfinite(out).all():
        raise ProjectionError("layout optimization produced non-finite coordinates")
    return out


def _resolve_ab(params: UmapParams) -> tuple[float, float]:
    if params.a is not None and params.b is not None:
        return params.a, params.b
    return fit_ab(params.min_dist, params.spread)


def umap_project(matrix: SentenceMatrix, params: UmapParams) -> Projection:
    proj, _ = umap_project_with_info(matrix, params)
    return proj


def umap_project_with_info(
    matrix: SentenceMatrix, params: UmapParams
) -> tuple[Projection, dict]:
    """Full pipeline: knn -> calibration -> fuzzy set -> curve fit -> init ->
    optimize. The info dict records the fitted curve and init outcome."""
    params.validate()
    n = matrix.rows.shape[0]
    if params.n_neighbors >= n:
        raise ProjectionError(f"n_neighbors={params.n_neighbors} must be < n={n}")
    knn = knn_exact(matrix, params.n_neighbors, params.metric)
    smooth = calibrate_knn(knn)
    graph = fuzzy_simplicial_set(knn, smooth)
    a, b = _resolve_ab(params)
    coords, fallback = initialize_layout(graph, params)
    init_mode = "random" if (params.init == "random" or fallback) else "spectral"
    coords = optimize_layout(coords, graph, params, (a, b))
    info = {
        "a": a,
        "b": b,
        "init_mode": init_mode,
        "spectral_fallback": fallback,
        "n_edges": graph.n_edges,
    }
    return Projection(coords, list(matrix.labels)), info
