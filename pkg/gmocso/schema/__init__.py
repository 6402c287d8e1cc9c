from .base import ArrayModel, as_matrix, as_vector
from .json import GmocsoEncoder, to_json
from .tables import FLOAT_FORMAT, read_table, write_table
from .typedef import (METRIC_NAMES, PROBLEM_IDS, BoxIndex, Matrix, MetricName,
                      ObjectiveVector, Point, ProblemId, Vector)

__all__ = [
    "ArrayModel",
    "BoxIndex",
    "FLOAT_FORMAT",
    "GmocsoEncoder",
    "Matrix",
    "METRIC_NAMES",
    "MetricName",
    "ObjectiveVector",
    "Point",
    "PROBLEM_IDS",
    "ProblemId",
    "Vector",
    "as_matrix",
    "as_vector",
    "read_table",
    "to_json",
    "write_table",
]
