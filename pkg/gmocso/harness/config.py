"""
Experiment configuration: which problems, how many seeded runs, which algorithm settings
and where each problem's reference front comes from.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import (BaseModel, Extra, Field,  # pylint: disable=no-name-in-module
                      ValidationError, root_validator, validator)

from ..optimizer import GmocsoConfig
from ..optimizer.config import MAX_SEED
from ..problems import get_problem
from ..schema import ProblemId
from ..utils import ConfigError


class ReferenceSource(BaseModel):
    """
    Where a reference front comes from: `analytic`, `file:PATH` or `pooled` (non-dominated
    union of every run's front).
    """

    kind: Literal["analytic", "file", "pooled"]
    path: Optional[Path] = None

    @classmethod
    def parse(cls, text: str) -> ReferenceSource:
        text = text.strip()
        if text in ("analytic", "pooled"):
            return cls(kind=text)
        if text.startswith("file:") and len(text) > len("file:"):
            return cls(kind="file", path=Path(text[len("file:") :]))
        raise ConfigError(
            f"invalid reference source {text!r}; expected analytic, pooled or file:PATH"
        )

    def __str__(self) -> str:
        return f"file:{self.path}" if self.kind == "file" else self.kind


class ExperimentConfig(BaseModel):
    """
    A batch of independent runs. Run i of every problem uses seed `seed_base + i`; the
    seed inside `algorithm` is replaced per run.
    """

    problems: List[ProblemId] = Field(..., min_items=1, description="Problems to optimise")
    runs: int = Field(default=30, ge=1, description="Independent runs per problem")
    algorithm: GmocsoConfig = Field(default_factory=GmocsoConfig)
    label: str = Field(default="GMOCSO", min_length=1, description="Algorithm label in results")
    seed_base: int = Field(default=0, ge=0, le=MAX_SEED)
    reference_front: Dict[ProblemId, str] = Field(
        default_factory=dict,
        description="Per-problem reference source: analytic, pooled or file:PATH",
    )
    reference_points: int = Field(default=1000, gt=0, description="Samples of analytic fronts")
    n_vars: Dict[ProblemId, int] = Field(
        default_factory=dict, description="Decision-variable count overrides (ZDT only)"
    )
    output_dir: Optional[Path] = None

    class Config:
        extra = Extra.forbid

    @validator("problems")
    @classmethod
    def _unique(cls, value: List[ProblemId]) -> List[ProblemId]:
        assert len(set(value)) == len(value), "problems must not repeat"
        return value

    @validator("reference_front")
    @classmethod
    def _sources(cls, value: Dict[ProblemId, str]) -> Dict[ProblemId, str]:
        for source in value.values():
            ReferenceSource.parse(source)
        return value

    @root_validator(skip_on_failure=True)
    @classmethod
    def _consistent(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        runs, seed_base = values["runs"], values["seed_base"]
        assert seed_base + runs - 1 <= MAX_SEED, "seed_base + runs - 1 exceeds 2**64 - 1"
        for problem in values["problems"]:
            source = values["reference_front"].get(problem)
            if source is not None and ReferenceSource.parse(source).kind == "pooled":
                assert runs >= 2, f"pooled reference for {problem} needs at least 2 runs"
        for problem, n in values["n_vars"].items():
            assert problem != "PressureVessel", "PressureVessel has a fixed variable count"
            assert n >= 2, f"{problem} needs at least 2 variables"
            assert values["algorithm"].cdc <= n, f"cdc exceeds the {n} variables of {problem}"
        return values

    def seeds(self) -> List[int]:
        return [self.seed_base + i for i in range(self.runs)]

    def reference_source(self, problem: str) -> ReferenceSource:
        """Configured source, defaulting to analytic when available and pooled otherwise."""
        if problem in self.reference_front:
            return ReferenceSource.parse(self.reference_front[problem])  # type: ignore[index]
        has_front = get_problem(problem).has_analytic_front
        return ReferenceSource(kind="analytic" if has_front else "pooled")


def describe(exc: ValidationError) -> str:
    """One `field.path: message` line per pydantic error."""
    return "; ".join(
        f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in exc.errors()
    )


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Parse and validate a JSON experiment config.

    Arguments:
    path -- JSON file following the ExperimentConfig schema; unknown keys are rejected.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_config(data, source=str(path))


def parse_config(data: Any, source: str = "config") -> ExperimentConfig:
    try:
        return ExperimentConfig.parse_obj(data)
    except ValidationError as exc:
        raise ConfigError(f"{source}: {describe(exc)}") from exc
