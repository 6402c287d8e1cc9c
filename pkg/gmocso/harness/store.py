"""
On-disk layout of an experiment:

    <root>/manifest.json
    <root>/<problem>/run_<i>.front.csv       f1,f2
    <root>/<problem>/run_<i>.positions.csv   x1..xn
    <root>/<problem>/runs.csv                run,seed,elapsed_seconds,front_size
    <root>/<problem>/reference.csv           written by the metrics command
    <root>/metrics.csv, <root>/summary.csv
    <root>/plots/<problem>/...
"""
from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, ValidationError  # pylint: disable=no-name-in-module

from .. import __version__
from ..optimizer import RunResult
from ..problems import load_front, save_front
from ..schema import FLOAT_FORMAT, Matrix, to_json, write_table
from ..utils import ConfigError, StorageError, retry, setup_logging
from .config import ExperimentConfig, describe

logger = setup_logging(__name__)

MANIFEST = "manifest.json"


class RunRecord(BaseModel):
    problem: str
    run: int
    seed: int
    elapsed_seconds: float
    front_size: int


class Manifest(BaseModel):
    """
    Everything needed to reproduce the stored fronts: the resolved config, the seeds and a
    sha256 per artifact (paths relative to the store root).
    """

    tool: str = "gmocso"
    version: str = __version__
    config: ExperimentConfig
    seeds: List[int]
    runs: List[RunRecord]
    artifacts: Dict[str, str] = Field(default_factory=dict)

    def records(self, problem: str) -> List[RunRecord]:
        return [r for r in self.runs if r.problem == problem]


def checksum(path: Path) -> str:
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError as exc:
        raise StorageError(f"cannot read {path}: {exc}") from exc


@retry()
def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


@retry()
def _write_frame(path: Path, frame: pd.DataFrame) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


class ResultStore(BaseModel):
    """
    A results directory.

    Attributes:
    -----------
    root : Path
        Directory holding the manifest and one sub-directory per problem.
    """

    root: Path

    def problem_dir(self, problem: str) -> Path:
        return self.root / problem

    def front_path(self, problem: str, run: int) -> Path:
        return self.problem_dir(problem) / f"run_{run}.front.csv"

    def positions_path(self, problem: str, run: int) -> Path:
        return self.problem_dir(problem) / f"run_{run}.positions.csv"

    def reference_path(self, problem: str) -> Path:
        return self.problem_dir(problem) / "reference.csv"

    def plots_dir(self, problem: str) -> Path:
        return self.root / "plots" / problem

    @property
    def manifest_path(self) -> Path:
        return self.root / MANIFEST

    @property
    def metrics_path(self) -> Path:
        return self.root / "metrics.csv"

    @property
    def summary_path(self) -> Path:
        return self.root / "summary.csv"

    def relative(self, path: Path) -> str:
        return path.relative_to(self.root).as_posix()

    def write_text(self, path: Path, text: str) -> Path:
        try:
            _write_text(path, text)
        except OSError as exc:
            raise StorageError(f"cannot write {path}: {exc}") from exc
        logger.info("Wrote %s", path)
        return path

    def write_frame(self, path: Path, frame: pd.DataFrame) -> Path:
        try:
            _write_frame(path, frame)
        except OSError as exc:
            raise StorageError(f"cannot write {path}: {exc}") from exc
        logger.info("Wrote %s (%d rows)", path, len(frame))
        return path

    def write_run(self, result: RunResult, run: int) -> List[Path]:
        """Front and positions of one run."""
        front = save_front(self.front_path(result.problem, run), np.asarray(result.final_front))
        positions = np.asarray(result.final_positions)
        width = positions.shape[1] if positions.ndim == 2 else 0
        positions_file = write_table(
            self.positions_path(result.problem, run),
            [f"x{d + 1}" for d in range(width)],
            positions,
        )
        return [front, positions_file]

    def write_runs_table(self, problem: str, records: Sequence[RunRecord]) -> Path:
        frame = pd.DataFrame.from_records(
            [r.dict(exclude={"problem"}) for r in records],
            columns=["run", "seed", "elapsed_seconds", "front_size"],
        )
        return self.write_frame(self.problem_dir(problem) / "runs.csv", frame)

    def write_manifest(self, manifest: Manifest) -> Path:
        return self.write_text(self.manifest_path, to_json(manifest.dict()))

    def read_manifest(self) -> Manifest:
        """The manifest; a missing one means the directory holds no results."""
        if not self.manifest_path.is_file():
            raise ConfigError(f"{self.root}: no results found (missing {MANIFEST})")
        try:
            return Manifest.parse_file(self.manifest_path)
        except ValidationError as exc:
            raise ConfigError(f"{self.manifest_path}: {describe(exc)}") from exc

    def load_fronts(self, manifest: Manifest, problem: str) -> Dict[int, Matrix]:
        """run -> final front, for every run of `problem` listed in the manifest."""
        return {r.run: load_front(self.front_path(problem, r.run)) for r in manifest.records(problem)}
