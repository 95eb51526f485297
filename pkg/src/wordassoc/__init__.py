"""Attributive word-association analysis for static word embeddings.

The toolkit ingests time-sliced, POS-tagged corpora, trains five static
embedding models per slice under one shared hyperparameter set, clusters
the proper-noun and adjective vocabulary of each embedding space, and
quantifies how the clusters differ across models and slices (Dunn's
index, cluster population spread, inter-model Jaccard similarity).
"""

__version__ = "0.1.0"

from .corpus import (
    CorpusSlice,
    TaggedToken,
    Vocabulary,
    WordRoleSet,
    build_vocabulary,
    normalize_token,
    parse_conllu,
    select_role_words,
    serialize_conllu,
)
from .embed import (
    EmbeddingModel,
    Hyperparams,
    build_cooccurrence,
    build_noise_distribution,
    char_ngrams,
    read_embeddings,
    train_fasttext,
    train_glove,
    train_model,
    train_word2vec,
    write_embeddings,
)
from .cluster import (
    Clustering,
    Dendrogram,
    DistanceMatrix,
    cosine_distance,
    cut_dendrogram,
    pairwise_cosine,
    ward_dendrogram,
)
from .metrics import (
    DistributionStats,
    DunnResult,
    JaccardMatrix,
    average_jaccard,
    distribution_stats,
    dunn_index,
    jaccard_clusterings,
    jaccard_sets,
)

__all__ = [
    "__version__",
    "TaggedToken",
    "CorpusSlice",
    "Vocabulary",
    "WordRoleSet",
    "normalize_token",
    "parse_conllu",
    "serialize_conllu",
    "build_vocabulary",
    "select_role_words",
    "Hyperparams",
    "EmbeddingModel",
    "build_noise_distribution",
    "char_ngrams",
    "build_cooccurrence",
    "train_word2vec",
    "train_fasttext",
    "train_glove",
    "train_model",
    "write_embeddings",
    "read_embeddings",
    "DistanceMatrix",
    "Dendrogram",
    "Clustering",
    "cosine_distance",
    "pairwise_cosine",
    "ward_dendrogram",
    "cut_dendrogram",
    "DunnResult",
    "DistributionStats",
    "JaccardMatrix",
    "dunn_index",
    "distribution_stats",
    "jaccard_sets",
    "jaccard_clusterings",
    "average_jaccard",
]
