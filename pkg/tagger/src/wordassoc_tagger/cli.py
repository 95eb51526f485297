"""Command-line entry point.

    tag --in texts/ --out slices/ [--lang en] [--batch 32]

Reads every *.txt under --in, writes <stem>.conllu next to a
tagger.json sidecar under --out. Exit codes: 0 success, 2
configuration error, 3 data error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from .errors import DataError, TaggerError
from .pipeline import Backend, make_backend
from .tokenizer import tokenize_document

BackendFactory = Callable[[str, int], Backend]


def write_conllu(stem: str, sentences: list[list[str]],
                 tags: list[list[str]], path: Path) -> tuple[int, int]:
    """One sentence block per input sentence, ten columns per token."""
    n_tokens = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for s_idx, (tokens, upos) in enumerate(zip(sentences, tags), 1):
            fh.write(f"# sent_id = {stem}-{s_idx}\n")
            for t_idx, (form, tag) in enumerate(zip(tokens, upos), 1):
                lemma = form.lower()
                fh.write(f"{t_idx}\t{form}\t{lemma}\t{tag}\t_\t_\t0\t_\t_\t_\n")
                n_tokens += 1
            fh.write("\n")
    return len(sentences), n_tokens


def tag_directory(in_dir: Path, out_dir: Path, backend: Backend,
                  batch: int) -> dict:
    files = sorted(in_dir.glob("*.txt"))
    if not files:
        raise DataError(f"no .txt files in {in_dir}")
    out_dir.mkdir(parents=True, exist_ok=True)
    per_file: dict[str, dict[str, int]] = {}
    for path in files:
        sentences = tokenize_document(path.read_text(encoding="utf-8"))
        if not sentences:
            raise DataError(f"{path} contains no tokenizable sentences")
        tags = backend.tag(sentences)
        out_path = out_dir / f"{path.stem}.conllu"
        n_sent, n_tok = write_conllu(path.stem, sentences, tags, out_path)
        per_file[out_path.name] = {"sentences": n_sent, "tokens": n_tok}

    sidecar = {
        "tagger": backend.name,
        "version": backend.version,
        "lang": backend.lang,
        "batch": batch,
        "files": per_file,
    }
    with (out_dir / "tagger.json").open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sidecar


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tag",
        description="Tag plain-text files into CoNLL-U corpus slices.",
    )
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory of .txt files, one slice each")
    parser.add_argument("--out", dest="out_dir", required=True,
                        help="output directory for .conllu files")
    parser.add_argument("--lang", default="en", help="language code (default en)")
    parser.add_argument("--batch", type=int, default=32,
                        help="sentences per backend batch (default 32)")
    return parser


def main(argv: list[str] | None = None,
         backend_factory: BackendFactory = make_backend) -> int:
    args = build_parser().parse_args(argv)
    try:
        in_dir = Path(args.in_dir)
        if not in_dir.is_dir():
            raise DataError(f"input directory not found: {in_dir}")
        backend = backend_factory(args.lang, args.batch)
        sidecar = tag_directory(in_dir, Path(args.out_dir), backend, args.batch)
        for name, counts in sidecar["files"].items():
            print(f"{name}: {counts['sentences']} sentences, "
                  f"{counts['tokens']} tokens")
        print(f"tagged with {sidecar['tagger']} {sidecar['version']} "
              f"({sidecar['lang']}) -> {args.out_dir}")
        return 0
    except TaggerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
