"""Exception hierarchy shared by every module.

The three intermediate classes carry the CLI exit codes: configuration
problems exit 2, data problems exit 3, numeric failures exit 4.
"""


class WordAssocError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ConfigError(WordAssocError):
    """Invalid experiment configuration or command-line arguments."""

    exit_code = 2


class DataError(WordAssocError):
    """Missing, malformed, or insufficient input data."""

    exit_code = 3


class NumericError(WordAssocError):
    """Numeric failure: NaN/Inf in a matrix or degenerate geometry."""

    exit_code = 4


class MalformedRecord(DataError):
    """A CoNLL-U or tabular line that violates the format."""


class EmptyVocabulary(DataError):
    """No word survived the frequency threshold."""


class EmptyRoleSet(DataError):
    """A slice yielded no neutral or no attribute words."""


class CorpusEmpty(DataError):
    """A trainer received a slice with no tokens."""


class VocabMismatch(DataError):
    """A trainer received a vocabulary disjoint from its corpus slice."""


class EmptyCooccurrence(DataError):
    """Co-occurrence table has no entries."""


class MalformedHeader(DataError):
    """Embedding file header is not two positive integers."""


class DimensionMismatch(DataError):
    """Embedding file rows disagree with the declared shape."""


class ZeroVector(NumericError):
    """A vector with zero norm where a direction is required."""


class InvalidK(ConfigError):
    """Requested cluster count is outside the valid range."""


class DegenerateDiameter(NumericError):
    """Every cluster is a singleton: the maximum diameter is zero."""


class WordSetMismatch(DataError):
    """Two clusterings do not partition the same word set."""


class EmptySeries(DataError):
    """An aggregate was requested over an empty series."""


class MissingSlice(DataError):
    """A configured slice file is absent from the corpus directory."""


class ModelCountError(ConfigError):
    """The evaluation mode requires a different number of models."""
