"""
GMOCSO engine.

Every iteration feeds the internal population into the external archive, trims the archive
through the hyper-grid, draws a leader from the least crowded box, then sends every cat
through tracing mode (velocity pull towards the leader) and seeking mode (greedy choice
among mutated copies).

All randomness comes from the run's `numpy.random.Generator`. Draw order per iteration:
truncation draws, leader draws, one tracing draw (or one per dimension) per cat in
population order, then per cat and per extra candidate the CDC dimension choice, the CDC
perturbation draws and, when several candidates are non-dominated, the pick.
"""
from __future__ import annotations

from time import perf_counter
from typing import Callable, List, Optional

import numpy as np
from pydantic import Field  # pylint: disable=no-name-in-module

from ..core import Archive, Grid, Solution, non_dominated_filter, non_dominated_mask
from ..problems import Problem
from ..schema import ArrayModel, Matrix, Vector
from ..utils import setup_logging
from .config import GmocsoConfig, RunResult

logger = setup_logging(__name__)

# |x_d| at or below this is treated as zero by the seeking mutation
STALL_EPSILON = 1e-12
# fraction of the dimension's range used as mutation scale at zero
STALL_RANGE = 0.1


class OptimizerState(ArrayModel):
    """
    Attributes:
    -----------
    population : List[Solution]
        The internal population; its size never changes.
    archive : Archive
        The external population.
    grid : Grid
        Grid of the archive as of the last truncation.
    iteration : int
        Completed iterations.
    rng : numpy.random.Generator
        The run's only source of randomness.
    """

    population: List[Solution]
    archive: Archive
    grid: Grid
    iteration: int = 0
    rng: np.random.Generator


Observer = Callable[[OptimizerState], None]


def greedy_select(candidate_objectives: Matrix, rng: np.random.Generator) -> int:
    """
    Index of the candidate a cat moves to: uniform over the non-dominated candidates.
    A single survivor is returned without consuming a draw.
    """
    survivors = np.flatnonzero(non_dominated_mask(candidate_objectives))
    if len(survivors) == 1:
        return int(survivors[0])
    return int(survivors[rng.integers(len(survivors))])


class Gmocso(ArrayModel):
    """
    Grid-based multi-objective cat swarm optimizer bound to one problem.

    Attributes:
    -----------
    config : GmocsoConfig
        Algorithm parameters and seed.
    problem : Problem
        The problem being minimised.
    """

    config: GmocsoConfig = Field(default_factory=GmocsoConfig)
    problem: Problem

    def _cat(self, position: Vector, velocity: Vector) -> Solution:
        return Solution.construct(
            position=position,
            velocity=velocity,
            objectives=self.problem.evaluate(position),
        )

    def initialize(self) -> OptimizerState:
        """
        Sample the population uniformly inside the bounds with zero velocity, seed the
        archive with its non-dominated cats and build the grid.
        """
        cfg, problem = self.config, self.problem
        cfg.check(problem)
        rng = np.random.default_rng(cfg.seed)
        population = [
            self._cat(
                problem.snap_discrete(rng.uniform(problem.lower_bounds, problem.upper_bounds)),
                np.zeros(problem.n_vars),
            )
            for _ in range(cfg.population_size)
        ]
        archive = Archive(capacity=cfg.archive_capacity)
        for cat in non_dominated_filter(population):
            archive.insert(cat.clone())
        archive.truncate(cfg.n_grid, rng)
        return OptimizerState.construct(
            population=population,
            archive=archive,
            grid=Grid.build(archive.members, cfg.n_grid),
            iteration=0,
            rng=rng,
        )

    def tracing_step(self, state: OptimizerState, leader: Solution) -> OptimizerState:
        """
        V <- w V + c1 r (X_leader - X); X <- X + V; clamp, snap and re-evaluate every cat.
        """
        cfg, problem = self.config, self.problem
        for cat in state.population:
            r = state.rng.random(problem.n_vars) if cfg.per_dimension_rand else state.rng.random()
            velocity = cfg.inertia_weight * cat.velocity + cfg.c1 * r * (
                leader.position - cat.position
            )
            position = problem.repair(cat.position + velocity)
            cat.velocity = velocity
            cat.position = position
            cat.objectives = problem.evaluate(position)
        return state

    def _candidate(self, position: Vector, rng: np.random.Generator) -> Vector:
        cfg, problem = self.config, self.problem
        x = position.copy()
        dims = rng.choice(problem.n_vars, size=cfg.cdc, replace=False)
        spread = (2.0 * rng.random(cfg.cdc) - 1.0) * cfg.srd
        base = x[dims]
        span = problem.upper_bounds[dims] - problem.lower_bounds[dims]
        x[dims] = base + np.where(
            np.abs(base) <= STALL_EPSILON, spread * STALL_RANGE * span, spread * base
        )
        return problem.repair(x)

    def seeking_step(self, state: OptimizerState) -> OptimizerState:
        """
        Give every cat SMP candidates (its own position plus SMP - 1 mutated copies) and
        move it to a random non-dominated one.
        """
        cfg, problem = self.config, self.problem
        if cfg.smp == 1:
            return state
        for cat in state.population:
            positions = [cat.position]
            objectives = [cat.objectives]
            for _ in range(cfg.smp - 1):
                x = self._candidate(cat.position, state.rng)
                positions.append(x)
                objectives.append(problem.evaluate(x))
            pick = greedy_select(np.stack(objectives), state.rng)
            if pick:
                cat.position = positions[pick]
                cat.objectives = objectives[pick]
        return state

    def iterate(self, state: OptimizerState) -> OptimizerState:
        """
        One loop body: archive update, truncation, grid, leader, tracing, seeking.
        """
        cfg = self.config
        for cat in state.population:
            state.archive.insert(cat.clone())
        state.archive.truncate(cfg.n_grid, state.rng)
        state.grid = Grid.build(state.archive.members, cfg.n_grid)
        leader = state.archive.select_leader(state.rng, state.grid)
        self.tracing_step(state, leader)
        self.seeking_step(state)
        state.iteration += 1
        logger.debug("Iteration %d: archive size %d", state.iteration, len(state.archive))
        return state

    def run(self, callback: Optional[Observer] = None) -> RunResult:
        """
        Initialise, iterate `max_iterations` times and report the archive.

        Arguments:
        callback -- Called with the state after initialisation and after every iteration.
        """
        cfg = self.config
        start = perf_counter()
        state = self.initialize()
        sizes = [len(state.archive)]
        if callback is not None:
            callback(state)
        for _ in range(cfg.max_iterations):
            self.iterate(state)
            sizes.append(len(state.archive))
            if callback is not None:
                callback(state)
        if state.iteration > 0:
            # the last moves have not been offered to the archive yet
            for cat in state.population:
                state.archive.insert(cat.clone())
            state.archive.truncate(cfg.n_grid, state.rng)
        elapsed = perf_counter() - start
        logger.info(
            "%s seed=%d: %d iterations, archive size %d, %.2f s",
            self.problem.id,
            cfg.seed,
            state.iteration,
            len(state.archive),
            elapsed,
        )
        return RunResult(
            problem=self.problem.id,
            seed=cfg.seed,
            final_front=state.archive.objectives().tolist(),
            final_positions=state.archive.positions().tolist(),
            elapsed_seconds=elapsed,
            iterations_completed=state.iteration,
            archive_sizes=sizes,
        )


def initialize(config: GmocsoConfig, problem: Problem) -> OptimizerState:
    return Gmocso(config=config, problem=problem).initialize()


def tracing_step(
    state: OptimizerState, config: GmocsoConfig, problem: Problem, leader: Solution
) -> OptimizerState:
    return Gmocso(config=config, problem=problem).tracing_step(state, leader)


def seeking_step(state: OptimizerState, config: GmocsoConfig, problem: Problem) -> OptimizerState:
    return Gmocso(config=config, problem=problem).seeking_step(state)


def iterate(state: OptimizerState, config: GmocsoConfig, problem: Problem) -> OptimizerState:
    return Gmocso(config=config, problem=problem).iterate(state)


def run(config: GmocsoConfig, problem: Problem, callback: Optional[Observer] = None) -> RunResult:
    return Gmocso(config=config, problem=problem).run(callback)
