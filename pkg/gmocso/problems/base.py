"""
Problem definitions shared by the ZDT suite and the pressure vessel design problem.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np
from pydantic import Field, root_validator, validator  # pylint: disable=no-name-in-module

from ..core import non_dominated_mask
from ..schema import ArrayModel, Matrix, ObjectiveVector, ProblemId, Vector, as_matrix, as_vector
from ..utils import ContractViolation, MissingReferenceError


class ReferenceFront(ArrayModel):
    """
    A sampled true Pareto front.

    Attributes:
    -----------
    points : Matrix
        Mutually non-dominated objective vectors, first objective strictly increasing.
    """

    points: Matrix = Field(...)

    @validator("points", pre=True)
    @classmethod
    def _coerce(cls, value: Any) -> Matrix:
        return as_matrix(value)

    @validator("points")
    @classmethod
    def _check(cls, value: Matrix) -> Matrix:
        assert value.shape[0] > 0, "reference front is empty"
        assert np.all(np.isfinite(value)), "reference front holds non-finite values"
        assert np.all(np.diff(value[:, 0]) > 0), "reference front must be sorted by f1"
        assert np.all(non_dominated_mask(value)), "reference front points must be non-dominated"
        return value

    @classmethod
    def from_points(cls, points: Any) -> ReferenceFront:
        """
        Build a front from arbitrary points: keep the non-dominated ones, sort them by the
        first objective and drop repeated first-objective values.
        """
        matrix = as_matrix(points)
        matrix = matrix[np.all(np.isfinite(matrix), axis=1)]
        matrix = matrix[non_dominated_mask(matrix)]
        matrix = matrix[np.lexsort(matrix.T[::-1])]
        _, first = np.unique(matrix[:, 0], return_index=True)
        return cls(points=matrix[first])

    def __len__(self) -> int:
        return int(self.points.shape[0])


class Problem(ABC, ArrayModel):
    """
    A box-constrained bi-objective minimisation problem.

    Attributes:
    -----------
    id : ProblemId
        Registry name of the problem.
    n_vars : int
        Number of decision variables.
    n_objectives : int
        Number of objectives (always 2 here).
    lower_bounds, upper_bounds : Vector
        Per-dimension bounds L_d < U_d.
    discrete_dims : Dict[int, float]
        Dimensions restricted to multiples of a step, keyed by index.
    """

    id: ProblemId
    n_vars: int = Field(..., gt=0)
    n_objectives: int = Field(default=2, ge=2, le=2)
    lower_bounds: Vector = Field(...)
    upper_bounds: Vector = Field(...)
    discrete_dims: Dict[int, float] = Field(default_factory=dict)

    @validator("lower_bounds", "upper_bounds", pre=True)
    @classmethod
    def _coerce(cls, value: Any) -> Vector:
        return as_vector(value)

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_bounds(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        n, lower, upper = values["n_vars"], values["lower_bounds"], values["upper_bounds"]
        assert lower.shape == (n,) and upper.shape == (n,), f"bounds must have length {n}"
        assert np.all(lower < upper), "every lower bound must be below its upper bound"
        for dim, step in values["discrete_dims"].items():
            assert 0 <= dim < n, f"discrete dimension {dim} out of range"
            assert step > 0, f"step of dimension {dim} must be positive"
            levels = math.floor(upper[dim] / step) - math.ceil(lower[dim] / step) + 1
            assert levels >= 2, f"dimension {dim} admits fewer than 2 levels"
        return values

    @abstractmethod
    def objectives(self, x: Vector) -> ObjectiveVector:
        """Objective vector of an in-bounds, snapped decision vector."""

    def evaluate(self, x: Any) -> ObjectiveVector:
        """
        Evaluate a decision vector.

        Arguments:
        x -- Decision vector of length `n_vars`, inside the bounds and already snapped.
        """
        x = as_vector(x)
        if x.shape != (self.n_vars,):
            raise ContractViolation(f"{self.id} expects {self.n_vars} variables, got {x.shape[0]}")
        if np.any(x < self.lower_bounds) or np.any(x > self.upper_bounds):
            raise ContractViolation(f"{self.id}: decision vector outside bounds, clamp it first")
        return self.objectives(x)

    def clamp_to_bounds(self, x: Any) -> Vector:
        """Replace every coordinate outside [L_d, U_d] by the violated limit."""
        return np.clip(as_vector(x), self.lower_bounds, self.upper_bounds)

    def snap_discrete(self, x: Any) -> Vector:
        """
        Round discrete dimensions to the nearest multiple of their step, then clamp them
        into bounds. Continuous dimensions pass through.
        """
        x = as_vector(x)
        if not self.discrete_dims:
            return x
        x = x.copy()
        for dim, step in self.discrete_dims.items():
            snapped = np.rint(x[dim] / step) * step
            x[dim] = min(max(snapped, self.lower_bounds[dim]), self.upper_bounds[dim])
        return x

    def repair(self, x: Any) -> Vector:
        """`clamp_to_bounds` followed by `snap_discrete`."""
        return self.snap_discrete(self.clamp_to_bounds(x))

    def reference_front(self, n_points: int = 1000) -> ReferenceFront:
        """
        Sample the analytic Pareto front.

        Arguments:
        n_points -- Number of samples taken along the front before filtering.
        """
        raise MissingReferenceError(
            f"{self.id}: no analytic reference front; supply one via file"
        )

    @property
    def has_analytic_front(self) -> bool:
        return type(self).reference_front is not Problem.reference_front
