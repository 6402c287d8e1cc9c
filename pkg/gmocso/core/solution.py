"""The cat: a decision vector with its velocity and evaluated objectives."""
from __future__ import annotations

from typing import Any

import numpy as np
from pydantic import Field, validator  # pylint: disable=no-name-in-module

from ..schema import ArrayModel, ObjectiveVector, Vector, as_vector


class Solution(ArrayModel):
    """
    A search agent.

    Attributes:
    -----------
    position : Vector
        Decision vector, inside the problem bounds after every clamp.
    velocity : Vector
        Displacement applied by the last tracing move.
    objectives : ObjectiveVector
        Objective costs of `position`; re-evaluated after every move.
    """

    position: Vector = Field(..., description="Decision vector")
    velocity: Vector = Field(..., description="Velocity, position units per iteration")
    objectives: ObjectiveVector = Field(..., description="Objective costs of position")

    @validator("position", "velocity", "objectives", pre=True)
    @classmethod
    def _coerce(cls, value: Any) -> Vector:
        return as_vector(value)

    @validator("velocity")
    @classmethod
    def _velocity_shape(cls, value: Vector, values: dict[str, Any]) -> Vector:
        position = values.get("position")
        if position is not None and value.shape != position.shape:
            raise ValueError("velocity and position must have the same length")
        return value

    def clone(self) -> Solution:
        """Deep copy; arrays are not shared with the original."""
        return Solution.construct(
            position=self.position.copy(),
            velocity=self.velocity.copy(),
            objectives=self.objectives.copy(),
        )

    @property
    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.objectives)))
