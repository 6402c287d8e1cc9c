from typing import List, Literal, Tuple, TypeAlias

import numpy as np

ProblemId: TypeAlias = Literal["ZDT1", "ZDT2", "ZDT3", "ZDT4", "ZDT6", "PressureVessel"]
MetricName: TypeAlias = Literal["rgd", "spacing", "spread", "elapsed"]
# float64 arrays; plain ndarray because pydantic v1 rejects parameterised array types
Vector: TypeAlias = np.ndarray
Matrix: TypeAlias = np.ndarray
ObjectiveVector: TypeAlias = Vector
BoxIndex: TypeAlias = Tuple[int, ...]
Point: TypeAlias = List[float]

PROBLEM_IDS: Tuple[ProblemId, ...] = ("ZDT1", "ZDT2", "ZDT3", "ZDT4", "ZDT6", "PressureVessel")
METRIC_NAMES: Tuple[MetricName, ...] = ("rgd", "spacing", "spread", "elapsed")
