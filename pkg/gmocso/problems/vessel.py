"""
Pressure vessel design as a bi-objective problem: fabrication cost against the summed
violation of the three design constraints.

x1 shell thickness, x2 head thickness (both multiples of 0.0625), x3 inner radius,
x4 length of the cylindrical section.
"""
from typing import Any, Dict, Literal, Tuple

import numpy as np
from pydantic import Field  # pylint: disable=no-name-in-module

from ..schema import ObjectiveVector, Vector, as_vector
from .base import Problem

THICKNESS_STEP = 0.0625
MIN_VOLUME = 1_296_000.0


class PressureVessel(Problem):
    id: Literal["PressureVessel"] = "PressureVessel"
    n_vars: int = Field(default=4, ge=4, le=4)
    lower_bounds: Vector = Field(
        default_factory=lambda: np.array([THICKNESS_STEP, THICKNESS_STEP, 10.0, 10.0])
    )
    upper_bounds: Vector = Field(
        default_factory=lambda: np.array([100 * THICKNESS_STEP, 100 * THICKNESS_STEP, 200.0, 240.0])
    )
    discrete_dims: Dict[int, float] = Field(
        default_factory=lambda: {0: THICKNESS_STEP, 1: THICKNESS_STEP}
    )

    @staticmethod
    def cost(x: Vector) -> float:
        x1, x2, x3, x4 = x
        return float(
            0.6224 * x1 * x3 * x4
            + 1.7781 * x2 * x3**2
            + 3.1661 * x1**2 * x4
            + 19.84 * x1**2 * x3
        )

    @staticmethod
    def constraints(x: Any) -> Tuple[float, float, float]:
        """(g1, g2, g3); the design is feasible when all three are >= 0."""
        x1, x2, x3, x4 = as_vector(x)
        g1 = x1 - 0.0193 * x3
        g2 = x2 - 0.00954 * x3
        g3 = np.pi * x3**2 * x4 + (4.0 / 3.0) * np.pi * x3**3 - MIN_VOLUME
        return float(g1), float(g2), float(g3)

    def feasible(self, x: Any) -> bool:
        return all(g >= 0 for g in self.constraints(x))

    def objectives(self, x: Vector) -> ObjectiveVector:
        violation = sum(max(-g, 0.0) for g in self.constraints(x))
        return np.array([self.cost(x), violation])
