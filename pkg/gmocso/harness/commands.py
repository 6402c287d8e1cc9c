"""
Harness commands. Each one is a plain function wrapped by `handle_errors`, so failures
surface as `CommandFailed` carrying the process exit code.
"""
from __future__ import annotations

import asyncio
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ValidationError  # pylint: disable=no-name-in-module
from rich.table import Table

from ..metrics import FrontPair, assess
from ..optimizer import GmocsoConfig, RunResult, run
from ..problems import ReferenceFront, get_problem, load_front, save_front
from ..schema import Matrix
from ..stats import (METRICS_COLUMNS, MetricSample, RankTable, SignificanceEntry,
                     SignificanceReport, friedman_ranks, is_summary_file,
                     load_metric_samples, load_summary_means, significance_report,
                     summarize, summary_frame)
from ..utils import (ConfigError, MissingReferenceError, async_cpu, console,
                     handle_errors, process_time, setup_logging)
from .config import ExperimentConfig, ReferenceSource, load_config
from .store import Manifest, ResultStore, RunRecord, checksum

logger = setup_logging(__name__)

DEFAULT_COMPARE_METRICS = ("rgd", "spacing", "spread")

PathLike = Union[str, Path]
Task = Tuple[str, int, int]


def default_jobs() -> int:
    """Worker count from `GMOCSO_JOBS`, 1 when unset."""
    raw = os.environ.get("GMOCSO_JOBS", "").strip()
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError as exc:
        raise ConfigError(f"GMOCSO_JOBS must be a positive integer, got {raw!r}") from exc
    if jobs < 1:
        raise ConfigError(f"GMOCSO_JOBS must be a positive integer, got {raw!r}")
    return jobs


def run_task(
    problem_id: str, n_vars: Optional[int], algorithm: Dict[str, Any], seed: int
) -> RunResult:
    """One seeded run. Module level and built from plain values so a process pool can ship it."""
    problem = get_problem(problem_id, n_vars)
    config = GmocsoConfig.parse_obj({**algorithm, "seed": seed})
    return run(config, problem)


async def _gather(config: ExperimentConfig, tasks: Sequence[Task], jobs: int) -> List[RunResult]:
    algorithm = config.algorithm.dict()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        run_ = async_cpu(run_task, pool)
        return list(
            await asyncio.gather(
                *(run_(p, config.n_vars.get(p), algorithm, seed) for p, _, seed in tasks)
            )
        )


def _execute(config: ExperimentConfig, tasks: Sequence[Task], jobs: int) -> List[RunResult]:
    if jobs == 1 or len(tasks) == 1:
        algorithm = config.algorithm.dict()
        return [
            run_task(p, config.n_vars.get(p), algorithm, seed)
            for p, _, seed in tasks
        ]
    logger.info("Running %d tasks on %d workers", len(tasks), jobs)
    return asyncio.run(_gather(config, tasks, jobs))


@handle_errors
@process_time
def cmd_run(
    config_file: PathLike, out: Optional[PathLike] = None, jobs: Optional[int] = None
) -> ResultStore:
    """
    Execute `runs` seeded optimizations of every configured problem and store the fronts.

    Arguments:
    config_file -- JSON experiment config.
    out -- Results directory; overrides the config's `output_dir`.
    jobs -- Worker processes; defaults to `GMOCSO_JOBS` or 1.
    """
    config = load_config(config_file)
    root = Path(out) if out is not None else config.output_dir
    if root is None:
        raise ConfigError("no output directory: pass --out or set output_dir")
    jobs = default_jobs() if jobs is None else jobs
    if jobs < 1:
        raise ConfigError(f"jobs must be positive, got {jobs}")
    for problem_id in config.problems:
        config.algorithm.check(get_problem(problem_id, config.n_vars.get(problem_id)))

    tasks: List[Task] = [
        (problem_id, i, seed)
        for problem_id in config.problems
        for i, seed in enumerate(config.seeds())
    ]
    results = _execute(config, tasks, jobs)

    store = ResultStore(root=root)
    records: List[RunRecord] = []
    artifacts: Dict[str, str] = {}
    for (problem_id, i, seed), result in zip(tasks, results):
        for path in store.write_run(result, i):
            artifacts[store.relative(path)] = checksum(path)
        records.append(
            RunRecord(
                problem=problem_id,
                run=i,
                seed=seed,
                elapsed_seconds=result.elapsed_seconds,
                front_size=len(result.final_front),
            )
        )
    for problem_id in config.problems:
        path = store.write_runs_table(problem_id, [r for r in records if r.problem == problem_id])
        artifacts[store.relative(path)] = checksum(path)
    store.write_manifest(
        Manifest(
            config=config.copy(update={"output_dir": root}),
            seeds=config.seeds(),
            runs=records,
            artifacts=artifacts,
        )
    )
    return store


def resolve_reference(
    problem_id: str,
    source: ReferenceSource,
    config: ExperimentConfig,
    fronts: Dict[int, Matrix],
) -> ReferenceFront:
    """
    Reference front of a stored problem.

    Arguments:
    source -- analytic sampling, a front file, or the non-dominated union of `fronts`.
    """
    if source.kind == "analytic":
        problem = get_problem(problem_id, config.n_vars.get(problem_id))
        if not problem.has_analytic_front:
            raise MissingReferenceError(
                f"{problem_id} has no analytic front; use --reference pooled or --reference file:PATH"
            )
        return problem.reference_front(config.reference_points)
    if source.kind == "file":
        assert source.path is not None
        if not source.path.is_file():
            raise MissingReferenceError(f"{problem_id}: reference file {source.path} not found")
        points = load_front(source.path)
    else:
        if len(fronts) < 2:
            raise MissingReferenceError(
                f"{problem_id}: pooled reference needs at least 2 runs, found {len(fronts)}"
            )
        points = np.vstack(list(fronts.values()))
    points = points[np.all(np.isfinite(points), axis=1)] if points.size else points
    if points.shape[0] == 0:
        raise MissingReferenceError(f"{problem_id}: {source} reference front is empty")
    try:
        return ReferenceFront.from_points(points)
    except ValidationError as exc:
        raise MissingReferenceError(f"{problem_id}: unusable {source} reference: {exc}") from exc


def _reference_for(
    manifest: Manifest,
    problem_id: str,
    override: Optional[ReferenceSource],
    fronts: Dict[int, Matrix],
) -> ReferenceFront:
    source = override or manifest.config.reference_source(problem_id)
    logger.info("%s: %s reference", problem_id, source)
    return resolve_reference(problem_id, source, manifest.config, fronts)


@handle_errors
@process_time
def cmd_metrics(results_dir: PathLike, reference: Optional[str] = None) -> Path:
    """
    Score every stored run and write `metrics.csv` plus the mean/std `summary.csv`.

    Arguments:
    results_dir -- Directory written by `cmd_run`.
    reference -- analytic, pooled or file:PATH for every problem; per-problem config
                 sources (analytic where available, pooled otherwise) when omitted.
    """
    store = ResultStore(root=Path(results_dir))
    manifest = store.read_manifest()
    override = ReferenceSource.parse(reference) if reference is not None else None
    label = manifest.config.label
    rows: List[Dict[str, Any]] = []
    for problem_id in manifest.config.problems:
        fronts = store.load_fronts(manifest, problem_id)
        front = _reference_for(manifest, problem_id, override, fronts)
        save_front(store.reference_path(problem_id), front.points)
        for record in manifest.records(problem_id):
            scores = assess(FrontPair(reference=front, approximate=fronts[record.run]))
            rows.append(
                {
                    "problem": problem_id,
                    "algorithm": label,
                    "run": record.run,
                    "seed": record.seed,
                    **scores.dict(),
                    "elapsed_seconds": record.elapsed_seconds,
                }
            )
    store.write_frame(store.metrics_path, pd.DataFrame.from_records(rows, columns=list(METRICS_COLUMNS)))
    samples = load_metric_samples(store.metrics_path)
    store.write_frame(store.summary_path, summary_frame(samples))
    return store.metrics_path


class CompareInput(BaseModel):
    label: Optional[str]
    path: Path

    @classmethod
    def parse(cls, text: str) -> CompareInput:
        """`LABEL=PATH` or a bare path."""
        label, sep, path = text.partition("=")
        if sep and label.strip() and path.strip():
            return cls(label=label.strip(), path=Path(path.strip()))
        if sep:
            raise ConfigError(f"invalid compare input {text!r}; expected LABEL=PATH or PATH")
        return cls(label=None, path=Path(text.strip()))


class CompareReport(BaseModel):
    ranks: RankTable
    significance: SignificanceReport


def _unique_label(name: str, seen: Dict[str, int]) -> str:
    seen[name] = seen.get(name, 0) + 1
    return name if seen[name] == 1 else f"{name}#{seen[name]}"


def _load_inputs(
    inputs: Sequence[CompareInput], metrics: Sequence[str]
) -> Tuple[List[MetricSample], Dict[Tuple[str, str], Dict[str, float]]]:
    """Per-run samples and summary-only means, with every algorithm label made unique."""
    samples: List[MetricSample] = []
    summary_means: Dict[Tuple[str, str], Dict[str, float]] = {}
    seen: Dict[str, int] = {}
    for entry in inputs:
        if not entry.path.is_file():
            raise ConfigError(f"compare input {entry.path} not found")
        if is_summary_file(entry.path):
            means = load_summary_means(entry.path, entry.label)
            rename = {
                a: _unique_label(a, seen)
                for a in dict.fromkeys(a for row in means.values() for a in row)
            }
            for (problem, metric), row in means.items():
                if metric in metrics:
                    bucket = summary_means.setdefault((problem, metric), {})
                    bucket.update({rename[a]: v for a, v in row.items()})
            continue
        loaded = load_metric_samples(entry.path, entry.label, metrics)
        rename = {a: _unique_label(a, seen) for a in dict.fromkeys(s.algorithm for s in loaded)}
        samples.extend(s.copy(update={"algorithm": rename[s.algorithm]}) for s in loaded)
    return samples, summary_means


def _averages(
    samples: Sequence[MetricSample],
    summary_means: Dict[Tuple[str, str], Dict[str, float]],
    metrics: Sequence[str],
) -> Dict[Tuple[str, str], Dict[str, float]]:
    table: Dict[Tuple[str, str], Dict[str, float]] = {}
    for sample in samples:
        table.setdefault((sample.problem, sample.metric), {})[sample.algorithm] = summarize(sample).mean
    for key, row in summary_means.items():
        table.setdefault(key, {}).update(row)
    algorithms = sorted({a for row in table.values() for a in row})
    if len(algorithms) < 2:
        raise ConfigError(f"compare needs at least two algorithms, found {algorithms or 'none'}")
    complete = {key: row for key, row in table.items() if set(row) == set(algorithms)}
    if not complete:
        coverage = {
            a: sorted({p for (p, _), row in table.items() if a in row}) for a in algorithms
        }
        raise ConfigError(
            "no problem is covered by every algorithm: "
            + "; ".join(f"{a}: {', '.join(ps)}" for a, ps in coverage.items())
        )
    for key in sorted(set(table) - set(complete)):
        logger.warning("Skipping %s/%s: only %s report it", *key, ", ".join(sorted(table[key])))
    order = {m: i for i, m in enumerate(metrics)}
    return {
        key: {a: complete[key][a] for a in algorithms}
        for key in sorted(complete, key=lambda k: (order.get(k[1], len(order)), k[0]))
    }


def _significance(
    samples: Sequence[MetricSample],
    summary_means: Dict[Tuple[str, str], Dict[str, float]],
    rows: Sequence[Tuple[str, str]],
    baseline: str,
    alpha: float,
) -> SignificanceReport:
    kept = [s for s in samples if (s.problem, s.metric) in rows]
    if any(s.algorithm == baseline for s in kept):
        report = significance_report(kept, baseline, alpha)
    else:
        logger.warning("Baseline %s has no per-run values; rank-sum tests skipped", baseline)
        report = SignificanceReport(baseline=baseline, alpha=alpha, entries=[])
    tested = {(e.problem, e.metric, e.other) for e in report.entries}
    for problem, metric in rows:
        for other in sorted(summary_means.get((problem, metric), {})):
            if other == baseline or (problem, metric, other) in tested:
                continue
            note = "summary values only, no per-run samples"
            logger.warning("Skipping %s vs %s on %s/%s: %s", baseline, other, problem, metric, note)
            report.entries.append(
                SignificanceEntry(
                    problem=problem, metric=metric, baseline=baseline, other=other, note=note
                )
            )
    return report


def rank_frame(table: RankTable) -> pd.DataFrame:
    """Per-row ranks followed by per-metric subtotal and ranking rows, then total and overall."""
    records: List[Dict[str, Any]] = [{"problem": r.problem, "metric": r.metric, **r.ranks} for r in table.rows]
    for metric, subtotal in table.subtotals.items():
        records.append({"problem": "subtotal", "metric": metric, **subtotal})
        records.append({"problem": "ranking", "metric": metric, **table.metric_ranking[metric]})
    records.append({"problem": "total", "metric": "", **table.total})
    records.append({"problem": "overall", "metric": "", **table.overall})
    return pd.DataFrame.from_records(records, columns=["problem", "metric", *table.algorithms])


def significance_frame(report: SignificanceReport) -> pd.DataFrame:
    return pd.DataFrame.from_records(
        [e.dict() for e in report.entries],
        columns=["problem", "metric", "baseline", "other", "p_value", "significant", "note"],
    )


def _print_report(report: CompareReport) -> None:
    ranks = report.ranks
    table = Table(title="Ranks (1 = best mean)")
    table.add_column("problem")
    table.add_column("metric")
    for algorithm in ranks.algorithms:
        table.add_column(algorithm, justify="right")
    for row in ranks.rows:
        table.add_row(row.problem, row.metric, *(f"{row.ranks[a]:g}" for a in ranks.algorithms))
    table.add_section()
    for metric, values in ranks.metric_ranking.items():
        table.add_row("ranking", metric, *(f"{values[a]:.3f}" for a in ranks.algorithms))
    table.add_row("overall", "", *(f"{ranks.overall[a]:.3f}" for a in ranks.algorithms))
    console.print(table)
    if ranks.friedman is not None:
        console.print(
            f"Friedman chi-square {ranks.friedman.statistic:.4f}, p = {ranks.friedman.p_value:.4g}"
        )

    significance = report.significance
    grid = Table(title=f"Rank-sum p-values vs {significance.baseline} (alpha {significance.alpha:g})")
    for column in ("problem", "metric", "other", "p-value", "significant"):
        grid.add_column(column)
    for entry in significance.entries:
        p_value = f"{entry.p_value:.4g}" if entry.p_value is not None else (entry.note or "")
        grid.add_row(entry.problem, entry.metric, entry.other, p_value, "yes" if entry.significant else "")
    console.print(grid)


@handle_errors
@process_time
def cmd_compare(
    inputs: Sequence[str],
    baseline: str,
    alpha: float = 0.05,
    metrics: Sequence[str] = DEFAULT_COMPARE_METRICS,
    out: Optional[PathLike] = None,
) -> CompareReport:
    """
    Rank algorithms by their mean metric values and test the baseline against each one.

    Arguments:
    inputs -- `LABEL=PATH` or `PATH` entries naming metrics or summary files.
    baseline -- Label the rank-sum tests are run against.
    alpha -- Significance threshold; p < alpha is significant.
    metrics -- Metrics taking part in the ranking.
    out -- Directory receiving ranks.csv and significance.csv.
    """
    if not 0 < alpha < 1:
        raise ConfigError(f"alpha must lie in (0, 1), got {alpha}")
    unknown = [m for m in metrics if m not in ("rgd", "spacing", "spread", "elapsed")]
    if unknown or not metrics:
        raise ConfigError(f"unknown metric(s) {', '.join(unknown) or '(none)'}")
    entries = [CompareInput.parse(text) for text in inputs]
    if len(entries) < 1:
        raise ConfigError("compare needs at least one input file")
    samples, summary_means = _load_inputs(entries, metrics)
    averages = _averages(samples, summary_means, metrics)
    ranks = friedman_ranks(averages)
    if baseline not in ranks.algorithms:
        raise ConfigError(f"baseline {baseline!r} not among {', '.join(ranks.algorithms)}")
    report = CompareReport(
        ranks=ranks,
        significance=_significance(samples, summary_means, list(averages), baseline, alpha),
    )
    _print_report(report)
    if out is not None:
        store = ResultStore(root=Path(out))
        store.write_frame(store.root / "ranks.csv", rank_frame(ranks))
        store.write_frame(store.root / "significance.csv", significance_frame(report.significance))
    return report


@handle_errors
@process_time
def cmd_plotdata(results_dir: PathLike, problem: str) -> Path:
    """
    Export one problem's fronts for plotting: the reference, one file per run and a combined
    `run,f1,f2` file whose reference rows are labelled `reference`.
    """
    get_problem(problem)
    store = ResultStore(root=Path(results_dir))
    manifest = store.read_manifest()
    if problem not in manifest.config.problems:
        raise ConfigError(
            f"{problem} not in results {store.root} ({', '.join(manifest.config.problems)})"
        )
    fronts = store.load_fronts(manifest, problem)
    if store.reference_path(problem).is_file():
        reference = load_front(store.reference_path(problem))
    else:
        reference = _reference_for(manifest, problem, None, fronts).points
    target = store.plots_dir(problem)
    save_front(target / "reference.csv", reference)
    parts = [pd.DataFrame({"run": "reference", "f1": reference[:, 0], "f2": reference[:, 1]})]
    for i, front in fronts.items():
        save_front(target / f"run_{i}.csv", front)
        parts.append(pd.DataFrame({"run": str(i), "f1": front[:, 0], "f2": front[:, 1]}))
    combined = pd.concat(parts, ignore_index=True)
    return store.write_frame(target / "combined.csv", combined)


@handle_errors
@process_time
def cmd_reference(problem: str, n_points: int = 1000, out: Optional[PathLike] = None) -> Path:
    """
    Write a problem's sampled analytic front, sorted by f1 and non-dominated.

    Arguments:
    n_points -- Samples along the front.
    out -- Destination CSV; `<problem>.reference.csv` when omitted.
    """
    if n_points < 1:
        raise ConfigError(f"points must be positive, got {n_points}")
    front = get_problem(problem).reference_front(n_points)
    path = save_front(Path(out) if out is not None else Path(f"{problem}.reference.csv"), front.points)
    logger.info("Wrote %d-point %s reference to %s", len(front), problem, path)
    return path
