"""Error hierarchy mirroring the consumer toolkit's exit-code scheme."""


class TaggerError(Exception):
    """Base class; exit_code is what the CLI returns for this failure."""

    exit_code = 1


class ConfigError(TaggerError):
    """Bad arguments or an unsupported configuration."""

    exit_code = 2


class DataError(TaggerError):
    """Missing or unusable input."""

    exit_code = 3


class NumericError(TaggerError):
    """Non-finite values where finite ones are required."""

    exit_code = 4
