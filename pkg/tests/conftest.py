import json
from pathlib import Path
from typing import Any, Callable, Dict

import numpy as np
import pytest

from gmocso.core import Solution


def brute_force_non_dominated(points: np.ndarray) -> np.ndarray:
    """Double-loop reference for the vectorised non-domination mask."""
    n = len(points)
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and all(points[j] <= points[i]) and any(points[j] < points[i]):
                keep[i] = False
                break
    return keep


def solution(*objectives: float, n_vars: int = 2) -> Solution:
    return Solution(position=np.zeros(n_vars), velocity=np.zeros(n_vars), objectives=list(objectives))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Write a small experiment config and return its path."""

    def factory(name: str = "experiment.json", **overrides: Any) -> Path:
        data: Dict[str, Any] = {
            "problems": ["ZDT1"],
            "runs": 2,
            "seed_base": 7,
            "n_vars": {"ZDT1": 5},
            "algorithm": {
                "population_size": 8,
                "max_iterations": 5,
                "archive_capacity": 10,
            },
        }
        data.update(overrides)
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return factory
