"""Reproducible ensemble experiments: configs, runners and output."""

from .config import (
    ConfigError,
    ExperimentConfig,
    list_presets,
    load_config,
    load_preset,
    loads_config,
    paper_scale,
    parse_config,
)
from .output import ResultTable, emit, read_csv, write_outputs
from .runners import RUNNERS, run_experiment

__all__ = ["ConfigError", "ExperimentConfig", "RUNNERS", "ResultTable", "emit", "list_presets",
           "load_config", "load_preset", "loads_config", "paper_scale", "parse_config", "read_csv",
           "run_experiment", "write_outputs"]
