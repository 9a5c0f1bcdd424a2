"""Multilingual corpora to 2-D language maps.

Pipeline: load language files, vectorize sentences (bag-of-words, TF-IDF, or
skip-gram word vectors with SIF averaging), project with a from-scratch UMAP,
and quantify cluster separation and overlap.
"""

__version__ = "0.1.0"

from ._kernels import backend_name
from .corpus import (
    Corpus,
    CorpusError,
    LanguageDoc,
    Sentence,
    WritingSystem,
    classify_writing_system,
    load_corpus,
    split_sentences,
    strip_punctuation,
    tokenize,
)
from .embed import (
    EmbeddingModel,
    EmbedError,
    SentenceMatrix,
    SifParams,
    Vocabulary,
    Word2VecParams,
    build_vocabulary,
    count_vectorize,
    first_principal_component,
    load_word_vectors,
    save_word_vectors,
    sif_sentence_embed,
    tfidf_vectorize,
    train_word2vec,
)
from .metrics import (
    ClusterReport,
    MetricsError,
    centroid_distances,
    knn_label_purity,
    overlap_report,
    pair_purity,
    silhouette,
)
from .umap import (
    FuzzyGraph,
    KnnGraph,
    Projection,
    ProjectionError,
    SmoothKnn,
    UmapParams,
    calibrate_knn,
    fit_ab,
    fuzzy_simplicial_set,
    initialize_layout,
    knn_exact,
    optimize_layout,
    smooth_knn,
    umap_project,
    umap_project_with_info,
)

__all__ = [
    "backend_name",
    "Corpus",
    "CorpusError",
    "LanguageDoc",
    "Sentence",
    "WritingSystem",
    "classify_writing_system",
    "load_corpus",
    "split_sentences",
    "strip_punctuation",
    "tokenize",
    "EmbeddingModel",
    "EmbedError",
    "SentenceMatrix",
    "SifParams",
    "Vocabulary",
    "Word2VecParams",
    "build_vocabulary",
    "count_vectorize",
    "first_principal_component",
    "load_word_vectors",
    "save_word_vectors",
    "sif_sentence_embed",
    "tfidf_vectorize",
    "train_word2vec",
    "ClusterReport",
    "MetricsError",
    "centroid_distances",
    "knn_label_purity",
    "overlap_report",
    "pair_purity",
    "silhouette",
    "FuzzyGraph",
    "KnnGraph",
    "Projection",
    "ProjectionError",
    "SmoothKnn",
    "UmapParams",
    "calibrate_knn",
    "fit_ab",
    "fuzzy_simplicial_set",
    "initialize_layout",
    "knn_exact",
    "optimize_layout",
    "smooth_knn",
    "umap_project",
    "umap_project_with_info",
]
