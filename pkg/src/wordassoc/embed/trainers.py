"""The five trainers behind one shared entry point."""

from __future__ import annotations

import hashlib
import logging
import threading
from typing import Callable

import numpy as np

from . import kernels
from .cooccurrence import CooccurrenceTable, build_cooccurrence
from .hyperparams import Hyperparams
from .model import SELECTOR_PARTS, EmbeddingModel
from .noise import build_noise_distribution, keep_probabilities
from .subword import build_subword_table
from ..corpus import CorpusSlice, Vocabulary, encode_slice
from ..errors import ConfigError, CorpusEmpty, EmptyCooccurrence, VocabMismatch

logger = logging.getLogger(__name__)

_U64_MASK = (1 << 64) - 1
_WORKER_STRIDE = 0x9E3779B97F4A7C15


def derive_seed(seed: int, slice_id: str, selector: str) -> int:
    """Stable per-(slice, model) seed: first 8 bytes of a SHA-256 digest.

    Hash-based rather than arithmetic so that adding slices or models
    never shifts the randomness of existing combinations.
    """
    digest = hashlib.sha256(f"{seed}|{slice_id}|{selector}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _encode_checked(slice_: CorpusSlice, vocab: Vocabulary) -> tuple[np.ndarray, np.ndarray]:
    if not slice_.sentences or slice_.token_count == 0:
        raise CorpusEmpty(f"slice {slice_.slice_id!r} has no tokens")
    ids, offsets = encode_slice(slice_, vocab)
    if ids.shape[0] == 0:
        raise VocabMismatch(
            f"slice {slice_.slice_id!r} shares no words with the vocabulary"
        )
    return ids, offsets


def _sentence_shards(n_sentences: int, workers: int) -> list[tuple[int, int]]:
    shards = []
    for w in range(workers):
        lo = n_sentences * w // workers
        hi = n_sentences * (w + 1) // workers
        if hi > lo:
            shards.append((lo, hi))
    return shards


def _run_threads(jobs: list[Callable[[], None]]) -> None:
    errors: list[BaseException] = []

    def guarded(job: Callable[[], None]) -> None:
        try:
            job()
        except BaseException as exc:  # surfaced after join
            errors.append(exc)

    threads = [threading.Thread(target=guarded, args=(job,)) for job in jobs]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]


def _init_state(hp: Hyperparams, rng_seed: int | None) -> np.uint64:
    seed = hp.seed if rng_seed is None else rng_seed
    return np.uint64(seed & _U64_MASK)


def _u64(state: int) -> np.uint64:
    # kernels box returned uint64 as plain int; values >= 2**63 would
    # otherwise overflow the next call's argument conversion
    return np.uint64(state & _U64_MASK)


def _sgd_run(ids: np.ndarray, offsets: np.ndarray, hp: Hyperparams,
             state: np.uint64, epoch_fn: Callable[..., tuple[np.uint64, float]]) -> None:
    """Drive epoch_fn over sentence shards; one thread per worker.

    epoch_fn(s_lo, s_hi, processed0, total_span, state) wraps a kernel.
    Each worker decays its learning rate over its own shard schedule, so
    the single-worker path is exactly the whole-corpus schedule.
    """
    n_sent = offsets.shape[0] - 1
    shards = _sentence_shards(n_sent, hp.workers)
    base = int(state)
    states = [
        np.uint64((base + (w + 1) * _WORKER_STRIDE) & _U64_MASK) if len(shards) > 1 else state
        for w in range(len(shards))
    ]
    processed = [0.0] * len(shards)
    spans = [
        float(hp.epochs * int(offsets[hi] - offsets[lo])) for lo, hi in shards
    ]
    def job(w: int) -> None:
        lo, hi = shards[w]
        st, done = epoch_fn(lo, hi, processed[w], spans[w], states[w])
        states[w] = _u64(st)
        processed[w] = done

    for _epoch in range(hp.epochs):
        if len(shards) == 1:
            job(0)
        else:
            _run_threads([lambda w=w: job(w) for w in range(len(shards))])


def train_word2vec(slice_: CorpusSlice, vocab: Vocabulary, flavor: str,
                   hp: Hyperparams, rng_seed: int | None = None) -> EmbeddingModel:
    """Negative-sampling trainer; returns the input-side vectors.

    cbow predicts the center from the averaged context window,
    skipgram predicts each context word from the center. The learning
    rate decays linearly to 1e-4 of its initial value.
    """
    if flavor not in ("cbow", "skipgram"):
        raise ConfigError(f"flavor must be cbow or skipgram, got {flavor!r}")
    ids, offsets = _encode_checked(slice_, vocab)
    v, d = len(vocab), hp.dimension
    state = _init_state(hp, rng_seed)

    syn0 = np.empty((v, d), dtype=np.float32)
    state = _u64(kernels.lcg_fill_centered(syn0.ravel(), 1.0 / d, state))
    syn1 = np.zeros((v, d), dtype=np.float32)
    noise = build_noise_distribution(vocab, hp.noise_power)
    keep = keep_probabilities(vocab.counts, hp.subsample_threshold)
    max_sent = int(np.diff(offsets).max())
    cbow = flavor == "cbow"

    def epoch(s_lo: int, s_hi: int, processed0: float, span: float,
              st: np.uint64) -> tuple[np.uint64, float]:
        return kernels.w2v_epoch(
            ids, offsets, s_lo, s_hi, syn0, syn1, noise.cumulative, keep,
            hp.window, hp.negative, hp.learning_rate, hp.lr_floor,
            processed0, span, max_sent, st, cbow)

    _sgd_run(ids, offsets, hp, state, epoch)
    return EmbeddingModel(words=vocab.words, matrix=syn0, kind="word2vec",
                          flavor=flavor, vocab=vocab, hyperparams=hp)


def train_fasttext(slice_: CorpusSlice, vocab: Vocabulary, flavor: str,
                   hp: Hyperparams, rng_seed: int | None = None,
                   internal_out: dict | None = None) -> EmbeddingModel:
    """Subword trainer: a word's vector is its own row plus the sum of
    its character n-gram bucket rows, both during training and in the
    emitted matrix. internal_out, when given, receives the raw word and
    gram matrices plus the gram table."""
    if flavor not in ("cbow", "skipgram"):
        raise ConfigError(f"flavor must be cbow or skipgram, got {flavor!r}")
    ids, offsets = _encode_checked(slice_, vocab)
    v, d = len(vocab), hp.dimension
    gram_ids, gram_offsets = build_subword_table(vocab, hp)
    state = _init_state(hp, rng_seed)

    syn0 = np.empty((v, d), dtype=np.float32)
    state = _u64(kernels.lcg_fill_centered(syn0.ravel(), 2.0 / d, state))
    syng = np.empty((hp.buckets, d), dtype=np.float32)
    state = _u64(kernels.lcg_fill_centered(syng.ravel(), 2.0 / d, state))
    syn1 = np.zeros((v, d), dtype=np.float32)
    noise = build_noise_distribution(vocab, hp.noise_power)
    keep = keep_probabilities(vocab.counts, hp.subsample_threshold)
    max_sent = int(np.diff(offsets).max())
    cbow = flavor == "cbow"

    def epoch(s_lo: int, s_hi: int, processed0: float, span: float,
              st: np.uint64) -> tuple[np.uint64, float]:
        return kernels.ft_epoch(
            ids, offsets, s_lo, s_hi, syn0, syng, syn1, gram_ids, gram_offsets,
            noise.cumulative, keep, hp.window, hp.negative, hp.learning_rate,
            hp.lr_floor, processed0, span, max_sent, st, cbow)

    _sgd_run(ids, offsets, hp, state, epoch)
    if internal_out is not None:
        internal_out.update(word_matrix=syn0, gram_matrix=syng,
                            gram_ids=gram_ids, gram_offsets=gram_offsets)
    composed = _composed_matrix(syn0, syng, gram_ids, gram_offsets)
    return EmbeddingModel(words=vocab.words, matrix=composed, kind="fasttext",
                          flavor=flavor, vocab=vocab, hyperparams=hp)


def _composed_matrix(syn0: np.ndarray, syng: np.ndarray, gram_ids: np.ndarray,
                     gram_offsets: np.ndarray) -> np.ndarray:
    out = syn0.astype(np.float64)
    for i in range(syn0.shape[0]):
        grams = gram_ids[gram_offsets[i]:gram_offsets[i + 1]]
        if grams.size:
            out[i] += syng[grams].astype(np.float64).sum(axis=0)
    return out.astype(np.float32)


def train_glove(cooc: CooccurrenceTable, vocab: Vocabulary, hp: Hyperparams,
                rng_seed: int | None = None,
                epoch_losses: list[float] | None = None) -> EmbeddingModel:
    """AdaGrad factorization of the weighted log co-occurrence matrix.

    Internals run in float64; the emitted float32 matrix is the sum of
    the word and context vectors. Per-epoch losses are logged and, when
    epoch_losses is given, appended to it.
    """
    if len(cooc) == 0:
        raise EmptyCooccurrence("co-occurrence table has no entries")
    if cooc.vocab_size != len(vocab):
        raise VocabMismatch(
            f"table built over {cooc.vocab_size} words, vocabulary has {len(vocab)}"
        )
    v, d = len(vocab), hp.dimension
    state = _init_state(hp, rng_seed)
    scale = 1.0 / (d + 1)

    w_main = np.empty((v, d), dtype=np.float64)
    state = _u64(kernels.lcg_fill_centered(w_main.ravel(), scale, state))
    w_ctx = np.empty((v, d), dtype=np.float64)
    state = _u64(kernels.lcg_fill_centered(w_ctx.ravel(), scale, state))
    b_main = np.empty(v, dtype=np.float64)
    state = _u64(kernels.lcg_fill_centered(b_main, scale, state))
    b_ctx = np.empty(v, dtype=np.float64)
    state = _u64(kernels.lcg_fill_centered(b_ctx, scale, state))
    g_main = np.ones((v, d), dtype=np.float64)
    g_ctx = np.ones((v, d), dtype=np.float64)
    gb_main = np.ones(v, dtype=np.float64)
    gb_ctx = np.ones(v, dtype=np.float64)

    order = np.arange(len(cooc), dtype=np.int64)
    for epoch in range(hp.effective_glove_epochs):
        state = _u64(kernels.shuffle_indices(order, state))
        if hp.workers == 1:
            loss = kernels.glove_epoch(
                cooc.rows, cooc.cols, cooc.weights, order, 0, len(cooc),
                w_main, w_ctx, b_main, b_ctx, g_main, g_ctx, gb_main, gb_ctx,
                hp.learning_rate, hp.glove_xmax, hp.glove_alpha)
        else:
            chunks = _sentence_shards(len(cooc), hp.workers)
            losses = [0.0] * len(chunks)

            def job(w: int) -> None:
                lo, hi = chunks[w]
                losses[w] = kernels.glove_epoch(
                    cooc.rows, cooc.cols, cooc.weights, order, lo, hi,
                    w_main, w_ctx, b_main, b_ctx, g_main, g_ctx, gb_main,
                    gb_ctx, hp.learning_rate, hp.glove_xmax, hp.glove_alpha)

            _run_threads([lambda w=w: job(w) for w in range(len(chunks))])
            loss = sum(losses)
        logger.info("glove epoch %d loss %.6f", epoch + 1, loss)
        if epoch_losses is not None:
            epoch_losses.append(loss)
    emitted = (w_main + w_ctx).astype(np.float32)
    return EmbeddingModel(words=vocab.words, matrix=emitted, kind="glove",
                          flavor=None, vocab=vocab, hyperparams=hp)


def train_model(selector: str, slice_: CorpusSlice, vocab: Vocabulary,
                hp: Hyperparams) -> EmbeddingModel:
    """Train by selector string with a seed derived from
    (hp.seed, slice id, selector), so every (slice, model) combination
    gets its own reproducible randomness."""
    if selector not in SELECTOR_PARTS:
        raise ConfigError(
            f"unknown model selector {selector!r}; expected one of {sorted(SELECTOR_PARTS)}"
        )
    kind, flavor = SELECTOR_PARTS[selector]
    seed = derive_seed(hp.seed, slice_.slice_id, selector)
    if kind == "word2vec":
        return train_word2vec(slice_, vocab, flavor, hp, rng_seed=seed)
    if kind == "fasttext":
        return train_fasttext(slice_, vocab, flavor, hp, rng_seed=seed)
    _encode_checked(slice_, vocab)
    cooc = build_cooccurrence(slice_, vocab, hp.window)
    return train_glove(cooc, vocab, hp, rng_seed=seed)
