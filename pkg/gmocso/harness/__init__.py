from .commands import (CompareInput, CompareReport, cmd_compare, cmd_metrics, cmd_plotdata,
                       cmd_reference, cmd_run, resolve_reference, run_task)
from .config import ExperimentConfig, ReferenceSource, load_config, parse_config
from .store import Manifest, ResultStore, RunRecord

__all__ = [
    "CompareInput",
    "CompareReport",
    "ExperimentConfig",
    "Manifest",
    "ReferenceSource",
    "ResultStore",
    "RunRecord",
    "cmd_compare",
    "cmd_metrics",
    "cmd_plotdata",
    "cmd_reference",
    "cmd_run",
    "load_config",
    "parse_config",
    "resolve_reference",
    "run_task",
]
