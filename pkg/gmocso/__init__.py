__title__ = "GMOCSO"
__version__ = "0.1.0"
__author__ = "Oscar Bahamonde <o.bahamonde@globant.com>"
__description__ = "Grid-based multi-objective cat swarm optimization with a reproducible experiment harness"

# pylint: disable=wrong-import-position
from .core import (Archive, Grid, Solution, dominates, non_dominated_filter,
                   non_dominated_mask)
from .metrics import FrontMetrics, FrontPair, assess, rgd, spacing, spread
from .optimizer import Gmocso, GmocsoConfig, OptimizerState, RunResult, run
from .problems import (PROBLEMS, PressureVessel, Problem, ReferenceFront, ZDT1, ZDT2,
                       ZDT3, ZDT4, ZDT6, get_problem)
from .stats import (friedman_ranks, significance_report, summarize,
                    wilcoxon_rank_sum)
from .utils import (CommandFailed, ConfigError, ContractViolation, EmptyArchiveError,
                    GmocsoError, MetricError, MissingReferenceError, StorageError)

__all__ = [
    "Archive",
    "CommandFailed",
    "ConfigError",
    "ContractViolation",
    "EmptyArchiveError",
    "FrontMetrics",
    "FrontPair",
    "Gmocso",
    "GmocsoConfig",
    "GmocsoError",
    "Grid",
    "MetricError",
    "MissingReferenceError",
    "OptimizerState",
    "PROBLEMS",
    "PressureVessel",
    "Problem",
    "ReferenceFront",
    "RunResult",
    "Solution",
    "StorageError",
    "ZDT1",
    "ZDT2",
    "ZDT3",
    "ZDT4",
    "ZDT6",
    "assess",
    "dominates",
    "friedman_ranks",
    "get_problem",
    "non_dominated_filter",
    "non_dominated_mask",
    "rgd",
    "run",
    "significance_report",
    "spacing",
    "spread",
    "summarize",
    "wilcoxon_rank_sum",
]
