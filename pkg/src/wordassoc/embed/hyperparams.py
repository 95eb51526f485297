"""Shared hyperparameter set for the five trainers.

One Hyperparams value drives every model in a run so that observed
metric differences are attributable to architecture, not tuning.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Any, Mapping

from ..errors import ConfigError

#: Trainer selection strings, in canonical report order.
MODEL_SELECTORS = ("w2v-cbow", "w2v-sg", "glove", "ft-cbow", "ft-sg")

#: Linear decay stops at this fraction of the initial learning rate.
LR_FLOOR_RATIO = 1e-4


@dataclass(frozen=True, slots=True)
class Hyperparams:
    """Uniform training knobs.

    window and learning_rate defaults are the measurement protocol's
    fixed values; the rest follow the published defaults of the systems
    they parameterize. subsample_threshold None or 0 disables frequent
    word downsampling, which keeps small-corpus runs exactly
    reproducible by hand. glove_epochs, when set, overrides epochs for
    the co-occurrence trainer only.
    """

    window: int = 5
    learning_rate: float = 0.025
    dimension: int = 100
    epochs: int = 5
    negative: int = 5
    min_count: int = 5
    subsample_threshold: float | None = None
    ngram_min: int = 3
    ngram_max: int = 6
    buckets: int = 2_000_000
    glove_xmax: float = 100.0
    glove_alpha: float = 0.75
    noise_power: float = 0.75
    glove_epochs: int | None = None
    seed: int = 1
    workers: int = 1

    def __post_init__(self) -> None:
        def need(cond: bool, msg: str) -> None:
            if not cond:
                raise ConfigError(f"hyperparams: {msg}")

        need(self.window >= 1, f"window must be >= 1, got {self.window}")
        need(self.learning_rate > 0, f"learning_rate must be > 0, got {self.learning_rate}")
        need(self.dimension >= 2, f"dimension must be >= 2, got {self.dimension}")
        need(self.epochs >= 1, f"epochs must be >= 1, got {self.epochs}")
        need(self.negative >= 1, f"negative must be >= 1, got {self.negative}")
        need(self.min_count >= 1, f"min_count must be >= 1, got {self.min_count}")
        if self.subsample_threshold is not None:
            need(self.subsample_threshold >= 0, "subsample_threshold must be >= 0")
        need(1 <= self.ngram_min <= self.ngram_max,
             f"need 1 <= ngram_min <= ngram_max, got {self.ngram_min}..{self.ngram_max}")
        need(self.buckets >= 1, f"buckets must be >= 1, got {self.buckets}")
        need(self.glove_xmax > 0, f"glove_xmax must be > 0, got {self.glove_xmax}")
        need(self.glove_alpha >= 0, f"glove_alpha must be >= 0, got {self.glove_alpha}")
        need(self.noise_power >= 0, f"noise_power must be >= 0, got {self.noise_power}")
        if self.glove_epochs is not None:
            need(self.glove_epochs >= 1, f"glove_epochs must be >= 1, got {self.glove_epochs}")
        need(self.seed >= 0, f"seed must be >= 0, got {self.seed}")
        need(self.workers >= 1, f"workers must be >= 1, got {self.workers}")

    @property
    def lr_floor(self) -> float:
        return self.learning_rate * LR_FLOOR_RATIO

    @property
    def effective_glove_epochs(self) -> int:
        return self.epochs if self.glove_epochs is None else self.glove_epochs

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "Hyperparams":
        """Build from flat JSON-style keys; unknown keys are config errors."""
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"hyperparams: unknown keys {sorted(unknown)}")
        try:
            return cls(**dict(data))
        except TypeError as exc:
            raise ConfigError(f"hyperparams: {exc}") from exc

    def to_mapping(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
