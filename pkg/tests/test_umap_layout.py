import numpy as np
import pytest

from lingua_atlas.embed import SentenceMatrix
from lingua_atlas.metrics import knn_label_purity
from lingua_atlas.umap import (
    FuzzyGraph,
    ProjectionError,
    UmapParams,
    calibrate_knn,
    fuzzy_simplicial_set,
    initialize_layout,
    knn_exact,
    optimize_layout,
    umap_project,
    umap_project_with_info,
)

from conftest import gaussian_blobs


def ring_graph(n, weight=1.0):
    rows = np.arange(n, dtype=np.int64)
    cols = np.roll(rows, -1).astype(np.int64)
    keep = rows < cols
    extra_rows = np.array([0], dtype=np.int64)
    extra_cols = np.array([n - 1], dtype=np.int64)
    return FuzzyGraph(
        n,
        np.concatenate([rows[keep], extra_rows]),
        np.concatenate([cols[keep], extra_cols]),
        np.full(keep.sum() + 1, weight),
    )


def two_component_graph():
    rows = np.array([0, 2], dtype=np.int64)
    cols = np.array([1, 3], dtype=np.int64)
    return FuzzyGraph(4, rows, cols, np.array([1.0, 1.0]))


class TestInitializeLayout:
    def test_shape_contract(self):
        graph = ring_graph(12)
        coords, fallback = initialize_layout(graph, UmapParams(seed=1))
        assert coords.shape == (12, 2)

    def test_random_mode_deterministic(self):
        graph = ring_graph(10)
        params = UmapParams(init="random", seed=9)
        a, fa = initialize_layout(graph, params)
        b, fb = initialize_layout(graph, params)
        assert np.array_equal(a, b)
        assert not fa and not fb
        assert (np.abs(a) <= 10.0).all()

    def test_disconnected_graph_falls_back(self):
        coords, fallback = initialize_layout(two_component_graph(), UmapParams(seed=3))
        assert fallback
        assert coords.shape == (4, 2)

    def test_spectral_on_connected_graph(self):
        graph = ring_graph(16)
        coords, fallback = initialize_layout(graph, UmapParams(seed=4))
        assert not fallback
        assert np.abs(coords).max() == pytest.approx(10.0)
        # ring symmetry: both eigenvector coordinates used, neither collapses
        assert coords[:, 0].std() > 0.1 and coords[:, 1].std() > 0.1


class TestOptimizeLayout:
    def test_zero_epochs_no_op(self):
        graph = ring_graph(6)
        coords = np.arange(12, dtype=np.float64).reshape(6, 2)
        out = optimize_layout(coords, graph, UmapParams(n_epochs=0, seed=0))
        assert np.array_equal(out, coords)
        assert out is not coords

    def test_attraction_shrinks_distance(self):
        graph = FuzzyGraph(2, np.array([0]), np.array([1]), np.array([1.0]))
        coords = np.array([[0.0, 0.0], [4.0, 0.0]])
        params = UmapParams(n_epochs=100, negative_sample_rate=0, seed=0, a=1.577, b=0.895)
        out = optimize_layout(coords, graph, params)
        assert np.linalg.norm(out[0] - out[1]) < 4.0

    def test_repulsion_grows_distance(self):
        graph = FuzzyGraph(2, np.array([], dtype=np.int64), np.array([], dtype=np.int64), np.array([]))
        coords = np.array([[0.0, 0.0], [1.0, 0.0]])
        params = UmapParams(n_epochs=100, negative_sample_rate=5, seed=0, a=1.577, b=0.895)
        out = optimize_layout(coords, graph, params)
        assert np.linalg.norm(out[0] - out[1]) > 1.0

    def test_never_produces_non_finite(self):
        rng = np.random.default_rng(0)
        graph = ring_graph(30, weight=1.0)
        coords = rng.uniform(-10, 10, size=(30, 2))
        params = UmapParams(n_epochs=300, learning_rate=5.0, seed=1, a=1.577, b=0.895)
        out = optimize_layout(coords, graph, params)
        assert np.isfinite(out).all()


class TestUmapProject:
    def test_row_count_and_labels(self):
        matrix = gaussian_blobs(n_per_blob=20, dim=10)
        proj = umap_project(matrix, UmapParams(n_neighbors=5, n_epochs=50, seed=0))
        assert proj.coords.shape == (60, 2)
        assert proj.labels == matrix.labels

    def test_deterministic_bits(self):
        matrix = gaussian_blobs(n_per_blob=15, dim=8)
        params = UmapParams(n_neighbors=5, n_epochs=60, seed=123)
        a = umap_project(matrix, params)
        b = umap_project(matrix, params)
        assert np.array_equal(a.coords, b.coords)

    def test_k_too_large_raises(self):
        matrix = gaussian_blobs(n_per_blob=4, n_blobs=2, dim=5)
        with pytest.raises(ProjectionError, match="must be < n"):
            umap_project(matrix, UmapParams(n_neighbors=8))

    def test_blob_recovery_smoke(self):
        matrix = gaussian_blobs(n_per_blob=30, dim=20)
        proj, info = umap_project_with_info(matrix, UmapParams(seed=42))
        purity = knn_label_purity(proj, 10)
        assert min(purity.values()) >= 0.9
        assert set(info) >= {"a", "b", "init_mode", "spectral_fallback"}

    def test_validation(self):
        matrix = gaussian_blobs(n_per_blob=10, n_blobs=2, dim=5)
        with pytest.raises(ProjectionError):
            umap_project(matrix, UmapParams(metric="manhattan"))
        with pytest.raises(ProjectionError):
            umap_project(matrix, UmapParams(init="pca"))
        with pytest.raises(ProjectionError):
            umap_project(matrix, UmapParams(n_neighbors=1))
