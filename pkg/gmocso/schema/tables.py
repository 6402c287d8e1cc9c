"""Numeric CSV tables: one header row, values written with 17 significant digits."""
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..utils import StorageError, retry, setup_logging
from .base import as_matrix
from .typedef import Matrix

logger = setup_logging(__name__)

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


@retry()
def _save(path: Path, header: str, rows: Matrix) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, rows, fmt=FLOAT_FORMAT, delimiter=",", header=header, comments="")


def write_table(path: PathLike, columns: Sequence[str], rows: Matrix) -> Path:
    """
    Write a numeric matrix as CSV.

    Arguments:
    path -- Destination file; parent directories are created.
    columns -- Header names, one per matrix column.
    rows -- 2-D array of values.
    """
    path = Path(path)
    matrix = as_matrix(rows, width=len(columns))
    if matrix.shape[1] != len(columns):
        raise StorageError(
            f"{path}: {matrix.shape[1]} columns of data for header {','.join(columns)}"
        )
    try:
        _save(path, ",".join(columns), matrix)
    except OSError as exc:
        raise StorageError(f"cannot write {path}: {exc}") from exc
    logger.debug("Wrote %s (%d rows)", path, matrix.shape[0])
    return path


def read_table(path: PathLike) -> Tuple[List[str], Matrix]:
    """Read a CSV written by `write_table` back into (header, matrix)."""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            columns = handle.readline().strip().split(",")
            rows = np.loadtxt(handle, delimiter=",", ndmin=2, dtype=np.float64)
    except (OSError, ValueError) as exc:
        raise StorageError(f"cannot read {path}: {exc}") from exc
    if rows.size == 0:
        rows = rows.reshape(0, len(columns))
    return columns, rows
