"""Training of the five embedding models over a corpus slice."""

from .cooccurrence import CooccurrenceTable, build_cooccurrence
from .hyperparams import LR_FLOOR_RATIO, MODEL_SELECTORS, Hyperparams
from .model import (
    SELECTOR_PARTS,
    EmbeddingModel,
    read_embeddings,
    write_embeddings,
)
from .noise import NoiseDistribution, build_noise_distribution, keep_probabilities
from .subword import build_subword_table, char_ngram_strings, char_ngrams, fnv1a_hash
from .trainers import (
    derive_seed,
    train_fasttext,
    train_glove,
    train_model,
    train_word2vec,
)

__all__ = [
    "CooccurrenceTable",
    "EmbeddingModel",
    "Hyperparams",
    "LR_FLOOR_RATIO",
    "MODEL_SELECTORS",
    "NoiseDistribution",
    "SELECTOR_PARTS",
    "build_cooccurrence",
    "build_noise_distribution",
    "build_subword_table",
    "char_ngram_strings",
    "char_ngrams",
    "derive_seed",
    "fnv1a_hash",
    "keep_probabilities",
    "read_embeddings",
    "train_fasttext",
    "train_glove",
    "train_model",
    "train_word2vec",
    "write_embeddings",
]
