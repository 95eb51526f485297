"""Turn directories of plain text into CoNLL-U corpus slices.

The output format is the downstream contract: one <stem>.conllu per
input <stem>.txt, ten tab-separated columns per token, plus a sidecar
tagger.json recording exactly which tagger version produced the files,
so a slice can be regenerated byte for byte.
"""

from .errors import ConfigError, DataError, TaggerError
from .pipeline import RuleLexiconTagger, make_backend
from .tokenizer import split_sentences, tokenize, tokenize_document

__all__ = [
    "ConfigError",
    "DataError",
    "RuleLexiconTagger",
    "TaggerError",
    "make_backend",
    "split_sentences",
    "tokenize",
    "tokenize_document",
]

__version__ = "0.1.0"
