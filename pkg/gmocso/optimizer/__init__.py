from .config import GmocsoConfig, RunResult
from .engine import (Gmocso, OptimizerState, greedy_select, initialize, iterate,
                     run, seeking_step, tracing_step)

__all__ = [
    "Gmocso",
    "GmocsoConfig",
    "OptimizerState",
    "RunResult",
    "greedy_select",
    "initialize",
    "iterate",
    "run",
    "seeking_step",
    "tracing_step",
]
