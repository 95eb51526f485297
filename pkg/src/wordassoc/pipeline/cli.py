"""Command-line interface.

Exit codes: 0 success, 2 configuration error (including bad arguments),
3 data error (missing or malformed inputs, IO failures), 4 numeric
failure (non-finite values where finite ones are required).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from collections import defaultdict
from pathlib import Path

import numpy as np

from .config import ExperimentConfig, load_config
from .run import (
    emit_reports,
    run_evaluation_fixed_corpus,
    run_evaluation_fixed_model,
    select_cluster_words,
)
from ..corpus import (
    build_vocabulary,
    load_slice,
    read_vocabulary,
    select_role_words,
    write_vocabulary,
)
from ..embed import MODEL_SELECTORS, read_embeddings, train_model, write_embeddings
from ..cluster import cut_dendrogram, ward_dendrogram
from ..errors import ConfigError, CorpusEmpty, DataError, WordAssocError


def _cmd_ingest(args: argparse.Namespace) -> int:
    corpus_dir = Path(args.corpus_dir)
    out_dir = Path(args.out)
    files = sorted(corpus_dir.glob("*.conllu"))
    if not files:
        raise CorpusEmpty(f"no .conllu files in {corpus_dir}")
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in files:
        slice_ = load_slice(path)
        vocab = build_vocabulary(slice_, args.min_count)
        roles = select_role_words(slice_, vocab)
        out_path = out_dir / f"{slice_.slice_id}.vocab.tsv"
        write_vocabulary(out_path, vocab, roles)
        print(
            f"{slice_.slice_id}: {slice_.token_count} tokens, "
            f"{len(vocab)} vocabulary words, {len(roles.neutral)} neutral, "
            f"{len(roles.attribute)} attribute -> {out_path}"
        )
    return 0


def _resolve_slice_file(spec: str, config: ExperimentConfig) -> Path:
    path = Path(spec)
    if path.suffix == ".conllu":
        return path
    return config.corpus_dir / f"{spec}.conllu"


def _cmd_train(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    path = _resolve_slice_file(args.slice, config)
    if not path.is_file():
        raise DataError(f"slice file not found: {path}")
    slice_ = load_slice(path)
    vocab = build_vocabulary(slice_, config.hyperparams.min_count)
    model = train_model(args.model, slice_, vocab, config.hyperparams)
    write_embeddings(model, args.out)
    print(f"{args.model} on {slice_.slice_id}: {model.size} x {model.dimension} -> {args.out}")
    return 0


def _cmd_cluster(args: argparse.Namespace) -> int:
    model = read_embeddings(args.embeddings)
    vocab, roles = read_vocabulary(args.roles)
    words = [w for w in select_cluster_words(vocab, roles, args.cap) if w in model]
    if len(words) < args.k:
        raise DataError(
            f"only {len(words)} role words have vectors; need at least k={args.k}"
        )
    rows = model.rows_for(words)
    clustering = cut_dendrogram(ward_dendrogram(rows), args.k, words=words)
    out = Path(args.out)
    with out.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["word", "cluster_id", "role"])
        for word, label in zip(words, clustering.labels):
            writer.writerow([word, int(label), roles.role_of(word)])
    print(f"{len(words)} words into {args.k} clusters -> {out}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    out_dir = Path(args.out) if args.out else config.output_dir
    if out_dir is None:
        raise ConfigError("no output directory: pass --out or set output_dir in the config")
    if args.mode == "fixed-corpus":
        bundle = run_evaluation_fixed_corpus(config,
                                             save_embeddings=args.save_embeddings,
                                             embeddings_dir=out_dir / "embeddings")
    else:
        bundle = run_evaluation_fixed_model(config)
    written = emit_reports(bundle, out_dir)
    for selector, (mean, sd) in bundle.summary.items():
        print(f"{selector}: dunn mean {mean:.6g}, sd {sd:.6g}")
    for name, outcome in bundle.replication.items():
        print(f"replication {name}: {outcome}")
    print(f"wrote {', '.join(p.name for p in written)} to {out_dir}")
    return 0


def _read_csv(path: Path) -> list[dict[str, str]]:
    if not path.is_file():
        raise DataError(f"missing report file: {path}")
    with path.open("r", encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _cmd_report(args: argparse.Namespace) -> int:
    in_dir = Path(args.in_dir)
    dunn_rows = _read_csv(in_dir / "dunn.csv")
    dist_rows = _read_csv(in_dir / "distribution.csv")
    jac_rows = _read_csv(in_dir / "jaccard.csv")

    models: list[str] = []
    dunn_series: dict[str, list[float]] = defaultdict(list)
    for row in dunn_rows:
        if row["model"] not in models:
            models.append(row["model"])
        dunn_series[row["model"]].append(float(row["dunn"]))
    if not models:
        raise DataError(f"{in_dir / 'dunn.csv'} has no data rows")

    summary_path = in_dir / "summary.csv"
    with summary_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model", "dunn_mean", "dunn_sd"])
        for m in models:
            series = np.array(dunn_series[m])
            writer.writerow([m, f"{series.mean():.12g}", f"{series.std():.12g}"])

    width = max(len(m) for m in models) + 2
    print("Dunn's Index by model (mean / SD over slices)")
    for m in models:
        series = np.array(dunn_series[m])
        print(f"  {m:<{width}} {series.mean():>10.4f} {series.std():>10.4f}")

    fractions: dict[str, list[float]] = defaultdict(list)
    for row in dist_rows:
        fractions[row["model"]].append(float(row["fraction"]))
    if fractions:
        print("\nCluster population fractions by model (min / mean / max)")
        for m in models:
            if m not in fractions:
                continue
            arr = np.array(fractions[m])
            print(f"  {m:<{width}} {arr.min():>9.2%} {arr.mean():>9.2%} {arr.max():>9.2%}")

    if jac_rows:
        jac = {(r["model_a"], r["model_b"]): float(r["avg_jaccard"]) for r in jac_rows}
        jm = [m for m in models if any(a == m for a, _ in jac)]
        if jm:
            print("\nCross-model Jaccard similarity (diagonal 1.00 by convention)")
            print("  " + " " * width + "".join(f"{m:>{width}}" for m in jm))
            for ma in jm:
                cells = "".join(f"{jac[(ma, mb)]:>{width}.2f}" for mb in jm)
                print(f"  {ma:<{width}}{cells}")

    report_json = in_dir / "report.json"
    if report_json.is_file():
        data = json.loads(report_json.read_text(encoding="utf-8"))
        for name, outcome in data.get("replication", {}).items():
            print(f"replication {name}: {outcome}")
    print(f"\nrewrote {summary_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordassoc",
        description="Train word embeddings over corpus slices, cluster "
                    "proper nouns and adjectives, and compare the models.",
    )
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="CoNLL-U slices -> vocabulary/role files")
    p.add_argument("--corpus-dir", required=True, help="directory of <slice>.conllu files")
    p.add_argument("--out", required=True, help="output directory for vocabulary files")
    p.add_argument("--min-count", type=int, default=5, help="frequency floor (default 5)")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("train", help="train one model on one slice")
    p.add_argument("--slice", required=True,
                   help="slice id (resolved in the config's corpus_dir) or a .conllu path")
    p.add_argument("--model", required=True, choices=MODEL_SELECTORS)
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--out", required=True, help="output embedding text file")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("cluster", help="cluster role words of one embedding")
    p.add_argument("--embeddings", required=True, help="embedding text file")
    p.add_argument("--roles", required=True, help="vocabulary/role file from ingest")
    p.add_argument("--k", type=int, default=8, help="cluster count (default 8)")
    p.add_argument("--cap", type=int, default=10_000,
                   help="cluster at most this many words by frequency (default 10000)")
    p.add_argument("--out", required=True, help="output CSV file")
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("evaluate", help="run a full evaluation regime")
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--mode", required=True, choices=("fixed-corpus", "fixed-model"))
    p.add_argument("--out", help="output directory (defaults to config output_dir)")
    p.add_argument("--save-embeddings", action="store_true",
                   help="also write per-(slice, model) embedding files")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("report", help="regenerate summary.csv and print the tables")
    p.add_argument("--in", dest="in_dir", required=True, help="directory written by evaluate")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except WordAssocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
