"""Experiment configuration: one JSON document drives a whole run."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..embed import MODEL_SELECTORS, Hyperparams
from ..errors import ConfigError

#: JSON keys owned by the pipeline; everything else is a hyperparameter.
_PIPELINE_KEYS = frozenset({
    "corpus_dir", "output_dir", "slices", "models", "k", "cluster_cap",
    "deterministic",
})


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    """Inputs, model roster, and knobs for one evaluation run.

    deterministic forces a single training worker so runs are bitwise
    reproducible; the hyperparams value is normalized accordingly.
    """

    corpus_dir: Path
    slices: tuple[str, ...]
    models: tuple[str, ...]
    hyperparams: Hyperparams
    k: int = 8
    cluster_cap: int = 10_000
    output_dir: Path | None = None
    deterministic: bool = False

    def __post_init__(self) -> None:
        if not self.slices:
            raise ConfigError("config: slices must be non-empty")
        if len(set(self.slices)) != len(self.slices):
            raise ConfigError("config: duplicate slice ids")
        if not self.models:
            raise ConfigError("config: models must be non-empty")
        for selector in self.models:
            if selector not in MODEL_SELECTORS:
                raise ConfigError(
                    f"config: unknown model selector {selector!r}; "
                    f"expected one of {list(MODEL_SELECTORS)}"
                )
        if len(set(self.models)) != len(self.models):
            raise ConfigError("config: duplicate model selectors")
        if self.k < 2:
            raise ConfigError(f"config: k must be >= 2, got {self.k}")
        if self.cluster_cap < self.k:
            raise ConfigError(
                f"config: cluster_cap must be >= k, got {self.cluster_cap} < {self.k}"
            )
        if self.deterministic and self.hyperparams.workers != 1:
            object.__setattr__(
                self, "hyperparams",
                dataclasses.replace(self.hyperparams, workers=1),
            )

    def to_mapping(self) -> dict[str, Any]:
        """Flat JSON-ready view; inverse of from_mapping."""
        out: dict[str, Any] = {
            "corpus_dir": str(self.corpus_dir),
            "slices": list(self.slices),
            "models": list(self.models),
            "k": self.k,
            "cluster_cap": self.cluster_cap,
            "deterministic": self.deterministic,
        }
        if self.output_dir is not None:
            out["output_dir"] = str(self.output_dir)
        out.update(self.hyperparams.to_mapping())
        return out

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
        if not isinstance(data, Mapping):
            raise ConfigError("config: top level must be a JSON object")
        for key in ("corpus_dir", "slices"):
            if key not in data:
                raise ConfigError(f"config: missing required key {key!r}")
        hp = Hyperparams.from_mapping(
            {k: v for k, v in data.items() if k not in _PIPELINE_KEYS}
        )
        slices = data["slices"]
        if not isinstance(slices, list) or not all(isinstance(s, str) for s in slices):
            raise ConfigError("config: slices must be a list of strings")
        models = data.get("models", list(MODEL_SELECTORS))
        if not isinstance(models, list) or not all(isinstance(m, str) for m in models):
            raise ConfigError("config: models must be a list of strings")
        out_dir = data.get("output_dir")
        try:
            return cls(
                corpus_dir=Path(data["corpus_dir"]),
                slices=tuple(slices),
                models=tuple(models),
                hyperparams=hp,
                k=int(data.get("k", 8)),
                cluster_cap=int(data.get("cluster_cap", 10_000)),
                output_dir=None if out_dir is None else Path(out_dir),
                deterministic=bool(data.get("deterministic", False)),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"config: {exc}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    """Parse a JSON config file; malformed JSON is a config error."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return ExperimentConfig.from_mapping(data)
