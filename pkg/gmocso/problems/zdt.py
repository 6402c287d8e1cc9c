"""
ZDT benchmark suite: two objectives, box-bounded decision space, analytic fronts.
"""
from __future__ import annotations

from abc import abstractmethod
from typing import Any, Dict, Literal

import numpy as np
from pydantic import Field, root_validator  # pylint: disable=no-name-in-module

from ..schema import ObjectiveVector, Vector
from .base import Problem, ReferenceFront


class ZDT(Problem):
    """Common ZDT structure: f1 from x1, f2 = g(x) * h(f1, g)."""

    @root_validator(pre=True)
    @classmethod
    def default_bounds(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        n = int(values.get("n_vars") or cls.__fields__["n_vars"].default)
        values["n_vars"] = n
        lower, upper = cls.bounds(n)
        values.setdefault("lower_bounds", lower)
        values.setdefault("upper_bounds", upper)
        return values

    @classmethod
    def bounds(cls, n_vars: int) -> tuple[Vector, Vector]:
        return np.zeros(n_vars), np.ones(n_vars)

    def f1(self, x: Vector) -> float:
        return float(x[0])

    def g(self, x: Vector) -> float:
        return float(1.0 + 9.0 * np.sum(x[1:]) / (self.n_vars - 1))

    @abstractmethod
    def h(self, f1: float, g: float) -> float:
        ...

    @abstractmethod
    def front_curve(self, f1: np.ndarray) -> np.ndarray:
        """f2 on the true Pareto front (g = 1) as a function of f1."""

    def objectives(self, x: Vector) -> ObjectiveVector:
        f1 = self.f1(x)
        g = self.g(x)
        return np.array([f1, g * self.h(f1, g)])

    def sample_f1(self, n_points: int) -> np.ndarray:
        return np.linspace(0.0, 1.0, n_points)

    def reference_front(self, n_points: int = 1000) -> ReferenceFront:
        f1 = self.sample_f1(n_points)
        return ReferenceFront.from_points(np.column_stack([f1, self.front_curve(f1)]))


class ZDT1(ZDT):
    """Convex front, f2 = 1 - sqrt(f1)."""

    id: Literal["ZDT1"] = "ZDT1"
    n_vars: int = Field(default=30, ge=2)

    def h(self, f1: float, g: float) -> float:
        return 1.0 - np.sqrt(f1 / g)

    def front_curve(self, f1: np.ndarray) -> np.ndarray:
        return 1.0 - np.sqrt(f1)


class ZDT2(ZDT):
    """Concave front, f2 = 1 - f1^2."""

    id: Literal["ZDT2"] = "ZDT2"
    n_vars: int = Field(default=30, ge=2)

    def h(self, f1: float, g: float) -> float:
        return 1.0 - (f1 / g) ** 2

    def front_curve(self, f1: np.ndarray) -> np.ndarray:
        return 1.0 - f1**2


class ZDT3(ZDT):
    """Disconnected front made of five segments."""

    id: Literal["ZDT3"] = "ZDT3"
    n_vars: int = Field(default=30, ge=2)

    def h(self, f1: float, g: float) -> float:
        return 1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * np.pi * f1)

    def front_curve(self, f1: np.ndarray) -> np.ndarray:
        return 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)


class ZDT4(ZDT):
    """Multimodal g over x_2..x_n in [-5, 5]; same front as ZDT1."""

    id: Literal["ZDT4"] = "ZDT4"
    n_vars: int = Field(default=10, ge=2)

    @classmethod
    def bounds(cls, n_vars: int) -> tuple[Vector, Vector]:
        lower = np.full(n_vars, -5.0)
        upper = np.full(n_vars, 5.0)
        lower[0], upper[0] = 0.0, 1.0
        return lower, upper

    def g(self, x: Vector) -> float:
        rest = x[1:]
        return float(
            1.0 + 10.0 * (self.n_vars - 1) + np.sum(rest**2 - 10.0 * np.cos(4.0 * np.pi * rest))
        )

    def h(self, f1: float, g: float) -> float:
        return 1.0 - np.sqrt(f1 / g)

    def front_curve(self, f1: np.ndarray) -> np.ndarray:
        return 1.0 - np.sqrt(f1)


class ZDT6(ZDT):
    """Non-uniform density: f1 = 1 - exp(-4 x1) sin^6(6 pi x1)."""

    id: Literal["ZDT6"] = "ZDT6"
    n_vars: int = Field(default=10, ge=2)

    def f1(self, x: Vector) -> float:
        return float(self.f1_of(x[0]))

    @staticmethod
    def f1_of(x1: Any) -> Any:
        return 1.0 - np.exp(-4.0 * x1) * np.sin(6.0 * np.pi * x1) ** 6

    def g(self, x: Vector) -> float:
        return float(1.0 + 9.0 * (np.sum(x[1:]) / (self.n_vars - 1)) ** 0.25)

    def h(self, f1: float, g: float) -> float:
        return 1.0 - (f1 / g) ** 2

    def front_curve(self, f1: np.ndarray) -> np.ndarray:
        return 1.0 - f1**2

    def sample_f1(self, n_points: int) -> np.ndarray:
        return self.f1_of(np.linspace(0.0, 1.0, n_points))
