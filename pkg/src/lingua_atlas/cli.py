"""Command-line pipeline: corpus -> embedding -> 2-D projection -> report.

`lingua-atlas run --config run.conf` reads a flat key=value config (dotted
keys for nested parameter groups), runs the full pipeline, and writes
coords.csv, plot.svg, report.json and manifest.json into the output
directory. Flags override config keys. Exit codes: 1 config, 2 corpus,
3 embedding, 4 projection/metrics, 5 io.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from ._kernels import backend_name
from .corpus import Corpus, CorpusError, Sentence, load_corpus
from .embed import (
    EmbedError,
    SifParams,
    Word2VecParams,
    build_vocabulary,
    count_vectorize,
    sif_sentence_embed,
    tfidf_vectorize,
    train_word2vec,
)
from .metrics import ClusterReport, MetricsError, overlap_report
from .svg import emit_svg
from .umap import Projection, ProjectionError, UmapParams, umap_project_with_info

log = logging.getLogger(__name__)

EXIT_CONFIG = 1
EXIT_CORPUS = 2
EXIT_EMBEDDING = 3
EXIT_PROJECTION = 4
EXIT_IO = 5

EMBEDDINGS = ("bow", "tfidf", "word2vec")


class ConfigError(Exception):
    """Raised for unreadable, unknown or inconsistent configuration."""


@dataclass
class RunConfig:
    corpus_dir: str = ""
    output_dir: str = ""
    embedding: str = "tfidf"
    line_per_sentence: bool = False
    max_sentences_per_language: int = 500
    purity_k: int = 10
    overlap_threshold: float = 0.7
    seed: int = 0
    umap: UmapParams = field(default_factory=UmapParams)
    w2v: Word2VecParams = field(default_factory=Word2VecParams)
    sif: SifParams = field(default_factory=SifParams)

    def validate(self) -> None:
        if not self.corpus_dir:
            raise ConfigError("corpus_dir is required")
        if not self.output_dir:
            raise ConfigError("output_dir is required (config key or --output-dir)")
        if self.embedding not in EMBEDDINGS:
            raise ConfigError(
                f"embedding must be one of {', '.join(EMBEDDINGS)}: got {self.embedding!r}"
            )
        if self.max_sentences_per_language < 1:
            raise ConfigError("max_sentences_per_language must be >= 1")
        if self.purity_k < 1:
            raise ConfigError("purity_k must be >= 1")


def _parse_scalar(raw: str, target_type: type):
    if target_type is bool:
        lowered = raw.lower()
        if lowered in ("true", "yes", "1", "on"):
            return True
        if lowered in ("false", "no", "0", "off"):
            return False
        raise ConfigError(f"expected a boolean, got {raw!r}")
    try:
        if target_type is int:
            return int(raw)
        if target_type is float:
            return float(raw)
    except ValueError as exc:
        raise ConfigError(f"expected a {target_type.__name__}, got {raw!r}") from exc
    return raw


# config key -> (config section attribute or None, field name, type)
_KEYS: dict[str, tuple[str | None, str, type]] = {
    "corpus_dir": (None, "corpus_dir", str),
    "output_dir": (None, "output_dir", str),
    "embedding": (None, "embedding", str),
    "line_per_sentence": (None, "line_per_sentence", bool),
    "max_sentences_per_language": (None, "max_sentences_per_language", int),
    "purity_k": (None, "purity_k", int),
    "overlap_threshold": (None, "overlap_threshold", float),
    "seed": (None, "seed", int),
    "umap.n_neighbors": ("umap", "n_neighbors", int),
    "umap.min_dist": ("umap", "min_dist", float),
    "umap.spread": ("umap", "spread", float),
    "umap.n_epochs": ("umap", "n_epochs", int),
    "umap.learning_rate": ("umap", "learning_rate", float),
    "umap.negative_sample_rate": ("umap", "negative_sample_rate", int),
    "umap.metric": ("umap", "metric", str),
    "umap.init": ("umap", "init", str),
    "umap.seed": ("umap", "seed", int),
    "umap.a": ("umap", "a", float),
    "umap.b": ("umap", "b", float),
    "w2v.dim": ("w2v", "dim", int),
    "w2v.window": ("w2v", "window", int),
    "w2v.negative": ("w2v", "negative", int),
    "w2v.epochs": ("w2v", "epochs", int),
    "w2v.lr": ("w2v", "lr", float),
    "w2v.min_count": ("w2v", "min_count", int),
    "w2v.seed": ("w2v", "seed", int),
    "sif.a": ("sif", "a", float),
}


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    """Flat `key = value` lines; '#' starts a comment; dotted keys set the
    nested parameter groups. The top-level seed seeds umap/w2v unless their
    dotted seed keys are given explicitly."""
    config = RunConfig()
    explicit_seeds = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        section, name, target_type = _KEYS[key]
        value = _parse_scalar(raw, target_type)
        target = config if section is None else getattr(config, section)
        setattr(target, name, value)
        if key in ("umap.seed", "w2v.seed"):
            explicit_seeds.add(key)
    if "umap.seed" not in explicit_seeds:
        config.umap.seed = config.seed
    if "w2v.seed" not in explicit_seeds:
        config.w2v.seed = config.seed
    return config


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    return parse_config_text(text, source=str(path))


def apply_flags(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    if args.embedding is not None:
        config.embedding = args.embedding
    if args.n_neighbors is not None:
        config.umap.n_neighbors = args.n_neighbors
    if args.min_dist is not None:
        config.umap.min_dist = args.min_dist
    if args.epochs is not None:
        config.umap.n_epochs = args.epochs
    if args.seed is not None:
        config.seed = args.seed
        config.umap.seed = args.seed
        config.w2v.seed = args.seed
    if args.output_dir is not None:
        config.output_dir = args.output_dir
    if args.line_per_sentence:
        config.line_per_sentence = True
    return config


def _truncate_per_language(corpus: Corpus, cap: int) -> list[Sentence]:
    kept: list[Sentence] = []
    seen: dict[str, int] = {}
    for sent in corpus.sentences:
        count = seen.get(sent.label, 0)
        if count < cap:
            kept.append(sent)
            seen[sent.label] = count + 1
    return kept


def _embed(config: RunConfig, sentences: list[Sentence]):
    if config.embedding == "bow":
        return count_vectorize(sentences, build_vocabulary(sentences))
    if config.embedding == "tfidf":
        return tfidf_vectorize(sentences, build_vocabulary(sentences))
    model = train_word2vec(sentences, config.w2v)
    return sif_sentence_embed(sentences, model, config.sif)


def _corpus_checksums(corpus_dir: str) -> dict[str, str]:
    sums = {}
    for path in sorted(Path(corpus_dir).iterdir(), key=lambda p: p.name):
        if path.is_file() and not path.name.startswith("."):
            sums[path.name] = hashlib.sha256(path.read_bytes()).hexdigest()
    return sums


def run_pipeline(config: RunConfig) -> tuple[Projection, ClusterReport, dict]:
    """Execute all stages and write the four output files. Returns the
    projection, the cluster report, and the manifest dict."""
    config.validate()
    timings: dict[str, float] = {}
    warnings: list[str] = []

    t0 = time.perf_counter()
    corpus = load_corpus(config.corpus_dir, config.line_per_sentence)
    checksums = _corpus_checksums(config.corpus_dir)
    sentences = _truncate_per_language(corpus, config.max_sentences_per_language)
    timings["corpus"] = time.perf_counter() - t0
    log.info("loaded %d languages, %d sentences", len(corpus.docs), len(sentences))

    t0 = time.perf_counter()
    matrix = _embed(config, sentences)
    timings["embedding"] = time.perf_counter() - t0
    log.info("embedded %d sentences into %d dims (%s)", *matrix.rows.shape, matrix.kind)

    t0 = time.perf_counter()
    proj, umap_info = umap_project_with_info(matrix, config.umap)
    timings["projection"] = time.perf_counter() - t0
    log.info("projected to 2-D (init=%s)", umap_info["init_mode"])

    t0 = time.perf_counter()
    report = overlap_report(proj, config.purity_k, config.overlap_threshold)
    timings["metrics"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        csv_path = out_dir / "coords.csv"
        emit_csv(proj, csv_path)
        written.append(csv_path)

        svg_path = out_dir / "plot.svg"
        warnings.extend(emit_svg(proj, svg_path))
        written.append(svg_path)

        report_path = out_dir / "report.json"
        report_path.write_text(_report_json(report), encoding="utf-8")
        written.append(report_path)

        timings["outputs"] = time.perf_counter() - t0
        manifest = {
            "artifact_version": __version__,
            "backend": backend_name(),
            "config": _config_dict(config),
            "corpus_checksums": checksums,
            "stage_timings_s": {k: round(v, 6) for k, v in timings.items()},
            "init_mode": umap_info["init_mode"],
            "spectral_fallback": umap_info["spectral_fallback"],
            "curve": {"a": umap_info["a"], "b": umap_info["b"]},
            "warnings": warnings,
        }
        manifest_path = out_dir / "manifest.json"
        manifest_path.write_text(
            json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        written.append(manifest_path)
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return proj, report, manifest


def emit_csv(proj: Projection, path: str | Path) -> None:
    """coords.csv: language,sentence_id,x,y with 9-significant-digit floats
    and LF line endings; sentence_id counts within each language."""
    counters: dict[str, int] = {}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["language", "sentence_id", "x", "y"])
        for (x, y), label in zip(proj.coords, proj.labels):
            sid = counters.get(label, 0)
            counters[label] = sid + 1
            writer.writerow([label, sid, format(float(x), "#.9g"), format(float(y), "#.9g")])


def _report_json(report: ClusterReport) -> str:
    payload = {
        "purity": report.purity,
        "silhouette": report.silhouette,
        "centroid_distances": {
            la: {lb: report.centroid_dist[i, j] for j, lb in enumerate(report.labels)}
            for i, la in enumerate(report.labels)
        },
        "overlapping_pairs": [[a, b, p] for a, b, p in report.overlapping_pairs],
    }
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _config_dict(config: RunConfig) -> dict:
    data = asdict(config)
    data["corpus_dir"] = str(data["corpus_dir"])
    data["output_dir"] = str(data["output_dir"])
    return data


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lingua-atlas",
        description="Project multilingual corpora into 2-D language maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the full pipeline from a config file")
    run.add_argument("--config", required=True, help="flat key=value config file")
    run.add_argument("--embedding", choices=EMBEDDINGS, default=None)
    run.add_argument("--n-neighbors", type=int, default=None)
    run.add_argument("--min-dist", type=float, default=None)
    run.add_argument("--epochs", type=int, default=None, help="UMAP optimization epochs")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--output-dir", default=None)
    run.add_argument("--line-per-sentence", action="store_true")
    return parser


def _setup_logging() -> None:
    level_name = os.environ.get("LINGUA_ATLAS_LOG", "warn").strip().lower()
    levels = {
        "error": logging.ERROR,
        "warn": logging.WARNING,
        "info": logging.INFO,
        "debug": logging.DEBUG,
    }
    logging.basicConfig(
        stream=sys.stderr,
        level=levels.get(level_name, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = _build_parser()
    args = parser.parse_args(argv)

    stage = "config"
    try:
        config = apply_flags(load_config(args.config), args)
        config.validate()
        stage = "pipeline"
        run_pipeline(config)
    except ConfigError as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CorpusError as exc:
        print(f"error [corpus]: {exc}", file=sys.stderr)
        return EXIT_CORPUS
    except EmbedError as exc:
        print(f"error [embedding]: {exc}", file=sys.stderr)
        return EXIT_EMBEDDING
    except (ProjectionError, MetricsError) as exc:
        print(f"error [projection]: {exc}", file=sys.stderr)
        return EXIT_PROJECTION
    except OSError as exc:
        print(f"error [io]: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
