"""
External archive of mutually non-dominated solutions, bounded by a hyper-grid
truncation rule.
"""
from __future__ import annotations

from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import Field  # pylint: disable=no-name-in-module

from ..schema import ArrayModel, Matrix
from ..utils import ContractViolation, EmptyArchiveError, setup_logging
from .grid import Grid
from .solution import Solution

logger = setup_logging(__name__)


class InsertOutcome(str, Enum):
    ACCEPTED = "Accepted"
    REJECTED = "Rejected"


class Archive(ArrayModel):
    """
    The external population.

    Attributes:
    -----------
    members : List[Solution]
        Pairwise non-dominated solutions, in insertion order.
    capacity : int
        Size the archive is truncated back to.
    """

    members: List[Solution] = Field(default_factory=list)
    capacity: int = Field(..., gt=0)

    def __len__(self) -> int:
        return len(self.members)

    def objectives(self) -> Matrix:
        """Member objectives stacked row-wise."""
        if not self.members:
            return np.empty((0, 0))
        return np.stack([m.objectives for m in self.members])

    def positions(self) -> Matrix:
        """Member decision vectors stacked row-wise."""
        if not self.members:
            return np.empty((0, 0))
        return np.stack([m.position for m in self.members])

    def insert(self, candidate: Solution) -> InsertOutcome:
        """
        Offer a candidate to the archive.

        The candidate is rejected when a member dominates or equals it. Otherwise every
        member it dominates is dropped and the candidate is appended. Capacity is left to
        `truncate`.

        Arguments:
        candidate -- An evaluated solution. The archive keeps this object, callers pass a clone
            when they keep mutating theirs.
        """
        if not candidate.is_finite:
            raise ContractViolation(
                f"non-finite objectives {candidate.objectives.tolist()} cannot enter the archive"
            )
        if not self.members:
            self.members.append(candidate)
            return InsertOutcome.ACCEPTED
        objectives = self.objectives()
        if objectives.shape[1] != candidate.objectives.shape[0]:
            raise ContractViolation(
                f"candidate has {candidate.objectives.shape[0]} objectives, "
                f"archive has {objectives.shape[1]}"
            )
        c = candidate.objectives
        if np.any(np.all(objectives <= c, axis=1)):
            return InsertOutcome.REJECTED
        dominated = np.all(c <= objectives, axis=1) & np.any(c < objectives, axis=1)
        if np.any(dominated):
            self.members = [m for m, drop in zip(self.members, dominated) if not drop]
        self.members.append(candidate)
        return InsertOutcome.ACCEPTED

    def truncate(self, n_grid: int, rng: np.random.Generator) -> Archive:
        """
        Remove members from the most crowded hyper-box, one at a time with a grid rebuild
        between removals, until the archive fits its capacity. Ties between boxes and the
        member removed are drawn uniformly from `rng`.
        """
        removed = 0
        while len(self.members) > self.capacity:
            grid = Grid.build(self.members, n_grid)
            crowded = grid.boxes_with(max(grid.occupancy.values()))
            box = crowded[int(rng.integers(len(crowded)))] if len(crowded) > 1 else crowded[0]
            idx = grid.members[box]
            del self.members[idx[int(rng.integers(len(idx)))]]
            removed += 1
        if removed:
            logger.debug("Truncated %d members, archive size %d", removed, len(self.members))
        return self

    def select_leader(
        self, rng: np.random.Generator, grid: Optional[Grid] = None, n_grid: int = 10
    ) -> Solution:
        """
        Copy of a uniformly random member of a least-occupied hyper-box.

        Arguments:
        rng -- The run's generator; draws the box among tied boxes, then the member.
        grid -- Grid built from this archive; rebuilt with `n_grid` bins when omitted.
        """
        if not self.members:
            raise EmptyArchiveError("cannot select a leader from an empty archive")
        if grid is None:
            grid = Grid.build(self.members, n_grid)
        sparse = grid.boxes_with(min(grid.occupancy.values()))
        box = sparse[int(rng.integers(len(sparse)))] if len(sparse) > 1 else sparse[0]
        idx = grid.members[box]
        member = idx[int(rng.integers(len(idx)))] if len(idx) > 1 else idx[0]
        return self.members[member].clone()


def archive_insert(archive: Archive, candidate: Solution) -> InsertOutcome:
    return archive.insert(candidate)


def archive_truncate(archive: Archive, n_grid: int, rng: np.random.Generator) -> Archive:
    return archive.truncate(n_grid, rng)


def select_leader(archive: Archive, grid: Grid, rng: np.random.Generator) -> Solution:
    return archive.select_leader(rng, grid)
