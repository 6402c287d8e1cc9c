"""
Hyper-grid density estimator over the archive's objective-space bounding box.
"""
from __future__ import annotations

from typing import Any, Dict, List, Sequence

import numpy as np
from pydantic import Field, root_validator  # pylint: disable=no-name-in-module

from ..schema import ArrayModel, BoxIndex, Matrix, ObjectiveVector, Vector, as_matrix
from ..utils import EmptyArchiveError
from .solution import Solution


def locate_many(
    points: Matrix, lower: Vector, upper: Vector, n_grid: int
) -> np.ndarray:
    """Box indices of every row of `points`, as an integer matrix."""
    span = upper - lower
    degenerate = span <= 0
    width = np.where(degenerate, 1.0, span / n_grid)
    index = np.floor((points - lower) / width)
    index = np.clip(index, 0, n_grid - 1)
    index[:, degenerate] = 0
    return index.astype(np.int64)


class Grid(ArrayModel):
    """
    Axis-aligned partition of [lower, upper] into `bins_per_dim` equal-width bins per
    objective.

    Attributes:
    -----------
    lower, upper : Vector
        Per-objective minimum and maximum over the archive members.
    bins_per_dim : int
        Number of bins per objective (nGrid).
    occupancy : Dict[BoxIndex, int]
        Member count of every non-empty box.
    members : Dict[BoxIndex, List[int]]
        Archive indices per non-empty box, ascending.
    """

    lower: Vector = Field(...)
    upper: Vector = Field(...)
    bins_per_dim: int = Field(..., gt=0)
    occupancy: Dict[BoxIndex, int] = Field(default_factory=dict)
    members: Dict[BoxIndex, List[int]] = Field(default_factory=dict)

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_bounds(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        lower, upper = values["lower"], values["upper"]
        assert lower.shape == upper.shape, "lower and upper must have the same length"
        assert np.all(lower <= upper), "lower must not exceed upper"
        return values

    @classmethod
    def build(cls, points: Sequence[Solution] | Matrix, n_grid: int) -> Grid:
        """
        Build the grid of a set of archive members (or their stacked objectives).

        Arguments:
        points -- Archive members, or their objective matrix.
        n_grid -- Bins per objective.
        """
        objectives = _objective_matrix(points)
        if objectives.shape[0] == 0:
            raise EmptyArchiveError("grid undefined on empty archive")
        lower = objectives.min(axis=0)
        upper = objectives.max(axis=0)
        boxes: Dict[BoxIndex, List[int]] = {}
        for i, row in enumerate(locate_many(objectives, lower, upper, n_grid)):
            boxes.setdefault(tuple(int(v) for v in row), []).append(i)
        return cls.construct(
            lower=lower,
            upper=upper,
            bins_per_dim=n_grid,
            occupancy={box: len(idx) for box, idx in boxes.items()},
            members=boxes,
        )

    def locate(self, p: ObjectiveVector) -> BoxIndex:
        """
        Box of an objective vector. Points outside the grid clamp to the edge bins.
        """
        point = np.asarray(p, dtype=np.float64).reshape(1, -1)
        row = locate_many(point, self.lower, self.upper, self.bins_per_dim)[0]
        return tuple(int(v) for v in row)

    def boxes_with(self, occupancy: int) -> List[BoxIndex]:
        """Boxes holding exactly `occupancy` members, in sorted order."""
        return sorted(box for box, count in self.occupancy.items() if count == occupancy)

    @property
    def size(self) -> int:
        return sum(self.occupancy.values())


def _objective_matrix(points: Sequence[Solution] | Matrix) -> Matrix:
    if isinstance(points, np.ndarray):
        return as_matrix(points)
    if len(points) == 0:
        return np.empty((0, 0))
    return np.stack([p.objectives for p in points])


def grid_build(points: Sequence[Solution] | Matrix, n_grid: int) -> Grid:
    return Grid.build(points, n_grid)


def grid_locate(grid: Grid, p: ObjectiveVector) -> BoxIndex:
    return grid.locate(p)
