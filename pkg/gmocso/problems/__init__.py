from pathlib import Path
from typing import Dict, Optional, Type, Union

from ..schema import Matrix, ProblemId, read_table, write_table
from ..utils import ConfigError, StorageError
from .base import Problem, ReferenceFront
from .vessel import PressureVessel
from .zdt import ZDT, ZDT1, ZDT2, ZDT3, ZDT4, ZDT6

PROBLEMS: Dict[str, Type[Problem]] = {
    "ZDT1": ZDT1,
    "ZDT2": ZDT2,
    "ZDT3": ZDT3,
    "ZDT4": ZDT4,
    "ZDT6": ZDT6,
    "PressureVessel": PressureVessel,
}

FRONT_COLUMNS = ("f1", "f2")


def get_problem(problem_id: Union[ProblemId, str], n_vars: Optional[int] = None) -> Problem:
    """
    Instantiate a registered problem.

    Arguments:
    problem_id -- One of ZDT1, ZDT2, ZDT3, ZDT4, ZDT6, PressureVessel.
    n_vars -- Decision-variable count override (ZDT only).
    """
    try:
        cls = PROBLEMS[problem_id]
    except KeyError as exc:
        raise ConfigError(
            f"unknown problem {problem_id!r}; expected one of {', '.join(PROBLEMS)}"
        ) from exc
    return cls(n_vars=n_vars) if n_vars is not None else cls()


def save_front(path: Union[str, Path], points: Matrix) -> Path:
    """Write objective vectors as the two-column `f1,f2` CSV."""
    return write_table(path, FRONT_COLUMNS, points)


def load_front(path: Union[str, Path]) -> Matrix:
    """Read an `f1,f2` CSV back into an (n, 2) matrix."""
    columns, rows = read_table(path)
    if tuple(columns) != FRONT_COLUMNS:
        raise StorageError(f"{path}: expected header f1,f2, found {','.join(columns)}")
    return rows


__all__ = [
    "FRONT_COLUMNS",
    "PROBLEMS",
    "PressureVessel",
    "Problem",
    "ReferenceFront",
    "ZDT",
    "ZDT1",
    "ZDT2",
    "ZDT3",
    "ZDT4",
    "ZDT6",
    "get_problem",
    "load_front",
    "save_front",
]
