"""Pydantic base model for records holding numpy arrays."""
from typing import Any

import numpy as np
from pydantic import BaseModel, Extra  # pylint: disable=no-name-in-module

from .typedef import Vector


def as_vector(value: Any) -> Vector:
    """Coerce a sequence into a 1-D float64 array (copying only when needed)."""
    array = np.asarray(value, dtype=np.float64)
    if array.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {array.shape}")
    return array


def as_matrix(value: Any, width: int | None = None) -> np.ndarray:
    """Coerce rows of points into a 2-D float64 array."""
    array = np.asarray(value, dtype=np.float64)
    if array.ndim == 1 and array.size == 0:
        array = array.reshape(0, width or 0)
    if array.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {array.shape}")
    return array


class ArrayModel(BaseModel):
    """
    Base for models with numpy fields.

    pydantic compares models through `.dict()`, which is ambiguous for arrays, so
    instances of subclasses must never be compared with `==` or searched with `in`.
    """

    class Config:
        arbitrary_types_allowed = True
        extra = Extra.forbid
        copy_on_model_validation = "none"
