"""End-to-end evaluation runs and report emission.

Two regimes: fixed-corpus (one corpus, all models, cross-model
agreement) and fixed-model (one model, many slices, quality vs corpus
size). Slices are processed sequentially; parallelism lives inside the
trainers via the workers hyperparameter.
"""

from __future__ import annotations

import csv
import json
import logging
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import ExperimentConfig
from ..cluster import (
    Clustering,
    DistanceMatrix,
    cut_dendrogram,
    pairwise_cosine,
    ward_dendrogram,
)
from ..corpus import (
    CorpusSlice,
    Vocabulary,
    WordRoleSet,
    build_vocabulary,
    load_slice,
    select_role_words,
)
from ..embed import EmbeddingModel, train_model, write_embeddings
from ..errors import EmptyRoleSet, MissingSlice, ModelCountError
from ..metrics import (
    DistributionStats,
    DunnResult,
    JaccardMatrix,
    average_jaccard,
    distribution_stats,
    dunn_index,
    jaccard_clusterings,
)
from .. import __version__

logger = logging.getLogger(__name__)

CSV_FILES = ("dunn.csv", "distribution.csv", "jaccard.csv", "summary.csv")
REPORT_JSON = "report.json"


@dataclass(frozen=True, slots=True)
class ReportBundle:
    """Everything one run produced, keyed by (slice_id, selector)."""

    config: ExperimentConfig
    dunn: dict[tuple[str, str], DunnResult]
    distribution: dict[tuple[str, str], DistributionStats]
    jaccard: JaccardMatrix | None
    summary: dict[str, tuple[float, float]]
    token_counts: dict[str, int]
    type_counts: dict[str, int]
    replication: dict[str, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        expected = {
            (s, m) for s in self.config.slices for m in self.config.models
        }
        for name, mapping in (("dunn", self.dunn), ("distribution", self.distribution)):
            if set(mapping) != expected:
                raise ValueError(f"{name} results do not cover the config grid exactly")


def slice_path(config: ExperimentConfig, slice_id: str) -> Path:
    return config.corpus_dir / f"{slice_id}.conllu"


def _check_slices_present(config: ExperimentConfig) -> None:
    for sid in config.slices:
        path = slice_path(config, sid)
        if not path.is_file():
            raise MissingSlice(f"slice {sid!r}: file not found: {path}")


def select_cluster_words(vocab: Vocabulary, roles: WordRoleSet, cap: int) -> list[str]:
    """Neutral + attribute words in vocabulary (frequency) order, capped.

    Vocabulary order is descending frequency with lexicographic ties, so
    the cap keeps the most frequent role words deterministically.
    """
    role_words = roles.words()
    picked = [w for w in vocab if w in role_words]
    if not picked:
        raise EmptyRoleSet("no role words available for clustering")
    return picked[:cap]


def cluster_embedding(model: EmbeddingModel, words: list[str],
                      k: int) -> tuple[Clustering, DistanceMatrix]:
    """Ward-cluster the given words in this model's space; also returns
    the cosine distances the validity metrics run on."""
    rows = model.rows_for(words)
    dendrogram = ward_dendrogram(rows)
    clustering = cut_dendrogram(dendrogram, k, words=words)
    return clustering, pairwise_cosine(rows)


@dataclass(frozen=True, slots=True)
class _SliceOutcome:
    clusterings: dict[str, Clustering]
    dunn: dict[str, DunnResult]
    distribution: dict[str, DistributionStats]


def _evaluate_slice(config: ExperimentConfig, slice_id: str,
                    embeddings_dir: Path | None = None) -> tuple[_SliceOutcome, CorpusSlice]:
    slice_ = load_slice(slice_path(config, slice_id), slice_id)
    vocab = build_vocabulary(slice_, config.hyperparams.min_count)
    roles = select_role_words(slice_, vocab)
    words = select_cluster_words(vocab, roles, config.cluster_cap)
    clusterings: dict[str, Clustering] = {}
    dunn: dict[str, DunnResult] = {}
    distribution: dict[str, DistributionStats] = {}
    for selector in config.models:
        logger.info("slice %s: training %s", slice_id, selector)
        model = train_model(selector, slice_, vocab, config.hyperparams)
        if embeddings_dir is not None:
            write_embeddings(model, embeddings_dir / f"{slice_id}.{selector}.vec")
        clustering, distances = cluster_embedding(model, words, config.k)
        clusterings[selector] = clustering
        dunn[selector] = dunn_index(clustering, distances)
        distribution[selector] = distribution_stats(clustering)
    return _SliceOutcome(clusterings, dunn, distribution), slice_


def summarize_dunn(dunn: dict[tuple[str, str], DunnResult],
                   slices: tuple[str, ...],
                   models: tuple[str, ...]) -> dict[str, tuple[float, float]]:
    """Per-model (mean, population SD) of Dunn values across slices."""
    out: dict[str, tuple[float, float]] = {}
    for selector in models:
        values = np.array([dunn[(s, selector)].value for s in slices])
        out[selector] = (float(values.mean()), float(values.std()))
    return out


def _replication_flags(summary: dict[str, tuple[float, float]]) -> dict[str, bool]:
    """Informational skip-gram vs CBOW Dunn orderings, where computable."""
    flags: dict[str, bool] = {}
    for sg, cbow, name in (("w2v-sg", "w2v-cbow", "w2v_sg_above_cbow"),
                           ("ft-sg", "ft-cbow", "ft_sg_above_cbow")):
        if sg in summary and cbow in summary:
            flags[name] = summary[sg][0] > summary[cbow][0]
    return flags


def run_evaluation_fixed_corpus(config: ExperimentConfig,
                                save_embeddings: bool = False,
                                embeddings_dir: Path | None = None) -> ReportBundle:
    """Evaluation regime I: one corpus, every model, per slice.

    All models within a slice cluster the identical word set, which is
    what makes the cross-model Jaccard comparison well-defined.
    save_embeddings writes each trained model to embeddings_dir, which
    defaults to <output_dir>/embeddings.
    """
    if len(config.models) < 2:
        raise ModelCountError(
            f"fixed-corpus evaluation needs >= 2 models, got {len(config.models)}"
        )
    _check_slices_present(config)
    if embeddings_dir is None and config.output_dir is not None:
        embeddings_dir = config.output_dir / "embeddings"
    if save_embeddings and embeddings_dir is not None:
        embeddings_dir = Path(embeddings_dir)
        embeddings_dir.mkdir(parents=True, exist_ok=True)
    else:
        embeddings_dir = None

    dunn: dict[tuple[str, str], DunnResult] = {}
    distribution: dict[tuple[str, str], DistributionStats] = {}
    pair_values: dict[tuple[str, str], list[float]] = {}
    token_counts: dict[str, int] = {}
    type_counts: dict[str, int] = {}
    for sid in config.slices:
        outcome, slice_ = _evaluate_slice(config, sid, embeddings_dir)
        token_counts[sid] = slice_.token_count
        type_counts[sid] = slice_.type_count
        for selector in config.models:
            dunn[(sid, selector)] = outcome.dunn[selector]
            distribution[(sid, selector)] = outcome.distribution[selector]
        for i, ma in enumerate(config.models):
            for mb in config.models[i + 1:]:
                value = jaccard_clusterings(outcome.clusterings[ma],
                                            outcome.clusterings[mb])
                pair_values.setdefault((ma, mb), []).append(value)

    m = len(config.models)
    values = np.eye(m, dtype=np.float64)
    for (ma, mb), series in pair_values.items():
        i, j = config.models.index(ma), config.models.index(mb)
        values[i, j] = values[j, i] = average_jaccard(series)
    jaccard = JaccardMatrix(models=config.models, values=values)
    summary = summarize_dunn(dunn, config.slices, config.models)
    return ReportBundle(
        config=config, dunn=dunn, distribution=distribution, jaccard=jaccard,
        summary=summary, token_counts=token_counts, type_counts=type_counts,
        replication=_replication_flags(summary),
    )


def run_evaluation_fixed_model(config: ExperimentConfig) -> ReportBundle:
    """Evaluation regime II: one model across slices of different sizes.

    No cross-model agreement exists here; the interesting output is the
    per-slice Dunn series next to per-slice corpus sizes.
    """
    if len(config.models) != 1:
        raise ModelCountError(
            f"fixed-model evaluation needs exactly 1 model, got {len(config.models)}"
        )
    if len(config.slices) < 2:
        raise ModelCountError(
            f"fixed-model evaluation needs >= 2 slices, got {len(config.slices)}"
        )
    _check_slices_present(config)
    dunn: dict[tuple[str, str], DunnResult] = {}
    distribution: dict[tuple[str, str], DistributionStats] = {}
    token_counts: dict[str, int] = {}
    type_counts: dict[str, int] = {}
    for sid in config.slices:
        outcome, slice_ = _evaluate_slice(config, sid)
        token_counts[sid] = slice_.token_count
        type_counts[sid] = slice_.type_count
        selector = config.models[0]
        dunn[(sid, selector)] = outcome.dunn[selector]
        distribution[(sid, selector)] = outcome.distribution[selector]
    summary = summarize_dunn(dunn, config.slices, config.models)
    return ReportBundle(
        config=config, dunn=dunn, distribution=distribution, jaccard=None,
        summary=summary, token_counts=token_counts, type_counts=type_counts,
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _git_version() -> str:
    try:
        described = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=10,
        )
        if described.returncode == 0:
            return described.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return "unknown"


def emit_reports(bundle: ReportBundle, output_dir: str | Path) -> list[Path]:
    """Write the four CSVs plus report.json; returns the written paths.

    Output is locale-independent and carries no timestamps, so a
    deterministic bundle serializes to byte-identical files.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    config = bundle.config
    written: list[Path] = []

    def _writer(name: str):
        path = out / name
        written.append(path)
        return path.open("w", encoding="utf-8", newline="")

    with _writer("dunn.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["slice", "model", "dunn"])
        for sid in config.slices:
            for selector in config.models:
                w.writerow([sid, selector, _fmt(bundle.dunn[(sid, selector)].value)])

    with _writer("distribution.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["slice", "model", "cluster", "fraction"])
        for sid in config.slices:
            for selector in config.models:
                stats = bundle.distribution[(sid, selector)]
                for cid, fraction in enumerate(stats.fractions):
                    w.writerow([sid, selector, cid, _fmt(float(fraction))])

    with _writer("jaccard.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["model_a", "model_b", "avg_jaccard"])
        if bundle.jaccard is not None:
            for ma in bundle.jaccard.models:
                for mb in bundle.jaccard.models:
                    w.writerow([ma, mb, _fmt(bundle.jaccard.entry(ma, mb))])

    with _writer("summary.csv") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["model", "dunn_mean", "dunn_sd"])
        for selector in config.models:
            mean, sd = bundle.summary[selector]
            w.writerow([selector, _fmt(mean), _fmt(sd)])

    report = {
        "version": __version__,
        "git": _git_version(),
        "seed": config.hyperparams.seed,
        "config": config.to_mapping(),
        "token_counts": bundle.token_counts,
        "type_counts": bundle.type_counts,
        "summary": {m: {"dunn_mean": v[0], "dunn_sd": v[1]}
                    for m, v in bundle.summary.items()},
        "replication": bundle.replication,
        "jaccard_diagonal_by_convention": bundle.jaccard is not None,
    }
    report_path = out / REPORT_JSON
    report_path.write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    written.append(report_path)
    return written
