"""Evaluation orchestration and the command-line interface."""

from .config import ExperimentConfig, load_config
from .run import (
    ReportBundle,
    emit_reports,
    run_evaluation_fixed_corpus,
    run_evaluation_fixed_model,
    select_cluster_words,
    summarize_dunn,
)

__all__ = [
    "ExperimentConfig",
    "ReportBundle",
    "emit_reports",
    "load_config",
    "run_evaluation_fixed_corpus",
    "run_evaluation_fixed_model",
    "select_cluster_words",
    "summarize_dunn",
]
