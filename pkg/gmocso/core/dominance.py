"""
Pareto dominance under minimisation.
"""
from enum import Enum
from typing import List, Sequence

import numpy as np

from ..schema import Matrix, ObjectiveVector, as_matrix
from ..utils import ContractViolation, chunker
from .solution import Solution

# rows compared per block in non_dominated_mask; bounds the n x block x m temporary
BLOCK = 256


class DominanceRelation(str, Enum):
    FIRST_DOMINATES = "FirstDominates"
    SECOND_DOMINATES = "SecondDominates"
    INCOMPARABLE = "Incomparable"
    EQUAL = "Equal"


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> DominanceRelation:
    """
    Compare two objective vectors.

    Arguments:
    a -- First objective vector.
    b -- Second objective vector, same length as `a`.
    """
    a_ = np.asarray(a, dtype=np.float64)
    b_ = np.asarray(b, dtype=np.float64)
    if a_.shape != b_.shape or a_.ndim != 1:
        raise ContractViolation(
            f"cannot compare objective vectors of shapes {a_.shape} and {b_.shape}"
        )
    a_le = bool(np.all(a_ <= b_))
    b_le = bool(np.all(b_ <= a_))
    if a_le and b_le:
        return DominanceRelation.EQUAL
    if a_le:
        return DominanceRelation.FIRST_DOMINATES
    if b_le:
        return DominanceRelation.SECOND_DOMINATES
    return DominanceRelation.INCOMPARABLE


def non_dominated_mask(objectives: Matrix) -> np.ndarray:
    """
    Boolean mask of the rows not dominated by any other row.

    Equal rows do not dominate each other, so duplicates survive together.
    """
    points = as_matrix(objectives)
    n = points.shape[0]
    mask = np.ones(n, dtype=bool)
    if n < 2:
        return mask
    for block in chunker(range(n), BLOCK):
        rows = points[block.start : block.stop]
        # le[i, j]: every objective of point j <= row i; lt[i, j]: some objective strictly less
        le = np.all(points[None, :, :] <= rows[:, None, :], axis=2)
        lt = np.any(points[None, :, :] < rows[:, None, :], axis=2)
        mask[block.start : block.stop] = ~np.any(le & lt, axis=1)
    return mask


def non_dominated_filter(points: Sequence[Solution]) -> List[Solution]:
    """
    Members of `points` not dominated by any other member, in input order.
    """
    if not points:
        return []
    widths = {len(p.objectives) for p in points}
    if len(widths) != 1:
        raise ContractViolation(f"inconsistent objective dimensions {sorted(widths)}")
    mask = non_dominated_mask(np.stack([p.objectives for p in points]))
    return [p for p, keep in zip(points, mask) if keep]
