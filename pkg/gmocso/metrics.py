"""
Front-quality metrics.

- rgd: mean distance from each reference point to its nearest approximate point. The
  literature usually calls this IGD; the name "reversed generational distance" is kept.
- spacing: standard deviation (population form) of nearest-neighbour distances inside the
  approximate front.
- spread: extent and uniformity, built from the extreme-point gaps and the distances from
  approximate points to the reference front.

Objectives are not normalised before any metric.
"""
from __future__ import annotations

import math
from typing import Any, Dict

import numpy as np
from pydantic import (BaseModel, Field, ValidationError,  # pylint: disable=no-name-in-module
                      root_validator, validator)
from scipy.spatial.distance import cdist

from .problems import ReferenceFront
from .schema import ArrayModel, Matrix, as_matrix
from .utils import MetricError, setup_logging

logger = setup_logging(__name__)


class FrontPair(ArrayModel):
    """
    A reference front and the approximation judged against it.

    Attributes:
    -----------
    reference : Matrix
        True Pareto front sample (P*).
    approximate : Matrix
        Front found by the algorithm (Q).
    """

    reference: Matrix = Field(...)
    approximate: Matrix = Field(...)

    def __init__(self, **data: Any) -> None:
        try:
            super().__init__(**data)
        except ValidationError as exc:
            raise MetricError(str(exc)) from exc

    @validator("reference", "approximate", pre=True)
    @classmethod
    def _coerce(cls, value: Any) -> Matrix:
        if isinstance(value, ReferenceFront):
            value = value.points
        return as_matrix(value)

    @root_validator(skip_on_failure=True)
    @classmethod
    def _check(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        reference, approximate = values["reference"], values["approximate"]
        if reference.shape[0] == 0 or approximate.shape[0] == 0:
            raise ValueError("metrics undefined on an empty front")
        if reference.shape[1] != approximate.shape[1]:
            raise ValueError(
                f"reference has {reference.shape[1]} objectives, approximate has {approximate.shape[1]}"
            )
        return values


class FrontMetrics(BaseModel):
    rgd: float = Field(..., ge=0)
    spacing: float = Field(..., description="NaN when the front has a single point")
    spread: float = Field(..., ge=0)


def rgd(pair: FrontPair) -> float:
    """Mean over reference points of the distance to the nearest approximate point."""
    return float(cdist(pair.reference, pair.approximate).min(axis=1).mean())


def spacing(approximate: Any) -> float:
    """
    Population standard deviation of nearest-other-member distances.

    Arguments:
    approximate -- At least two objective vectors.
    """
    points = as_matrix(approximate)
    if points.shape[0] < 2:
        raise MetricError("spacing undefined for fewer than 2 points")
    distances = cdist(points, points)
    np.fill_diagonal(distances, np.inf)
    nearest = distances.min(axis=1)
    return float(math.sqrt(np.mean((nearest - nearest.mean()) ** 2)))


def _by_first_objective(points: Matrix) -> Matrix:
    return points[np.lexsort(points.T[::-1])]


def spread(pair: FrontPair) -> float:
    """
    Delta indicator. Both fronts are sorted by f1; d_f and d_l join their first and last
    points, and d_i runs from each approximate point to the nearest reference point. A zero
    denominator (perfect coincidence) gives 0.
    """
    reference = _by_first_objective(pair.reference)
    approximate = _by_first_objective(pair.approximate)
    d_f = float(np.linalg.norm(reference[0] - approximate[0]))
    d_l = float(np.linalg.norm(reference[-1] - approximate[-1]))
    d = cdist(approximate, reference).min(axis=1)
    d_mean = float(d.mean())
    denominator = d_f + d_l + (len(d) - 1) * d_mean
    if denominator == 0:
        return 0.0
    return float((d_f + d_l + np.sum(np.abs(d - d_mean))) / denominator)


def assess(pair: FrontPair) -> FrontMetrics:
    """All three metrics of a pair; a single-point front reports spacing as NaN."""
    if pair.approximate.shape[0] < 2:
        logger.warning("Front of %d point(s): spacing reported as NaN", pair.approximate.shape[0])
        spacing_ = math.nan
    else:
        spacing_ = spacing(pair.approximate)
    return FrontMetrics(rgd=rgd(pair), spacing=spacing_, spread=spread(pair))
