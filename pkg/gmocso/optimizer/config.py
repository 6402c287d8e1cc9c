"""Configuration and result records of a single GMOCSO run."""
from typing import List

from pydantic import BaseModel, Extra, Field  # pylint: disable=no-name-in-module

from ..problems import Problem
from ..schema import Point, ProblemId
from ..utils import ConfigError

MAX_SEED = 2**64 - 1


class GmocsoConfig(BaseModel):
    """
    GMOCSO parameters. Defaults reproduce the published settings (population 100,
    100 iterations, w = 1, c1 = 1, SMP 2, CDC 1, SRD 1, 10 grid bins, archive 100).
    """

    population_size: int = Field(default=100, gt=0, description="Number of cats")
    max_iterations: int = Field(default=100, ge=0, description="Iteration budget")
    c1: float = Field(default=1.0, description="Attraction constant of the velocity update")
    inertia_weight: float = Field(default=1.0, description="Multiplier on the previous velocity")
    smp: int = Field(default=2, ge=1, description="Seeking memory pool: candidates per cat")
    cdc: int = Field(default=1, ge=1, description="Counts of dimension to change per candidate")
    srd: float = Field(default=1.0, ge=0, description="Seeking range of the selected dimension")
    n_grid: int = Field(default=10, gt=0, description="Hyper-grid bins per objective")
    archive_capacity: int = Field(default=100, gt=0, description="External archive size")
    per_dimension_rand: bool = Field(
        default=False, description="Draw the tracing random number per dimension instead of per cat"
    )
    seed: int = Field(default=0, ge=0, le=MAX_SEED, description="Generator seed")

    class Config:
        extra = Extra.forbid
        validate_assignment = True

    def check(self, problem: Problem) -> None:
        """Raise `ConfigError` when the config cannot drive `problem`."""
        if self.cdc > problem.n_vars:
            raise ConfigError(
                f"cdc={self.cdc} exceeds the {problem.n_vars} decision variables of {problem.id}"
            )


class RunResult(BaseModel):
    """
    Outcome of one optimizer run.

    Attributes:
    -----------
    final_front : List[Point]
        Archive objectives at termination.
    final_positions : List[Point]
        Decision vectors of the same archive members, same order.
    archive_sizes : List[int]
        Archive size after initialisation and after every iteration.
    """

    problem: ProblemId
    seed: int
    final_front: List[Point]
    final_positions: List[Point]
    elapsed_seconds: float
    iterations_completed: int
    archive_sizes: List[int] = Field(default_factory=list)
