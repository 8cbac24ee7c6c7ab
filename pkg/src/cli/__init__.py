"""
CLI Module

Provides:
- The experiment config schema, presets and validation diagnostics
- The experiment pipelines and their CSV / JSON outputs
- Run orchestration with reproducible seeding
"""

from .experiments import PIPELINES, ExperimentResult
from .output import OutputWriter, Table, gnuplot_script, render_csv
from .presets import PRESETS, get_preset, preset_names
from .runner import RunManifest, exit_code_for, run
from .schema import Diagnostic, ExperimentConfig, load_config, read_config_file, validate

__all__ = [
    "PIPELINES",
    "PRESETS",
    "Diagnostic",
    "ExperimentConfig",
    "ExperimentResult",
    "OutputWriter",
    "RunManifest",
    "Table",
    "exit_code_for",
    "get_preset",
    "gnuplot_script",
    "load_config",
    "preset_names",
    "read_config_file",
    "render_csv",
    "run",
    "validate",
]
