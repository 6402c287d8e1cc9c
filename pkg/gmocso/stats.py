"""
Statistical comparison of algorithms over independent runs: mean/std summaries, Friedman
style rank aggregation and the two-sided Wilcoxon rank-sum test.
"""
from __future__ import annotations

import math
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, validator  # pylint: disable=no-name-in-module
from scipy.special import comb
from scipy.stats import friedmanchisquare, norm, rankdata, tiecorrect

from .schema import METRIC_NAMES, MetricName
from .utils import ConfigError, ContractViolation, StorageError, setup_logging

logger = setup_logging(__name__)

# exact null distribution is enumerated up to this combined sample size (tie-free only)
EXACT_MAX_SIZE = 16

RowKey = Tuple[str, str]
Averages = Mapping[RowKey, Mapping[str, float]]
METRICS_COLUMNS = ("problem", "algorithm", "run", "seed", "rgd", "spacing", "spread", "elapsed_seconds")
SUMMARY_COLUMNS = ("problem", "algorithm", "metric", "mean", "std")
# metric name -> column of the per-run metrics file
METRIC_COLUMN: Dict[str, str] = {
    "rgd": "rgd",
    "spacing": "spacing",
    "spread": "spread",
    "elapsed": "elapsed_seconds",
}


class MetricSample(BaseModel):
    """
    One metric of one algorithm on one problem, one value per independent run.
    """

    algorithm: str
    problem: str
    metric: MetricName
    values: List[float] = Field(..., min_items=1)

    @validator("values")
    @classmethod
    def _finite(cls, value: List[float]) -> List[float]:
        assert all(math.isfinite(v) for v in value), "metric values must be finite"
        return value


class Summary(BaseModel):
    mean: float
    std: float
    n: int


def summarize(sample: Union[MetricSample, Sequence[float]]) -> Summary:
    """
    Arithmetic mean and sample (n - 1) standard deviation; std is 0 for a single value.
    """
    values = np.asarray(sample.values if isinstance(sample, MetricSample) else sample, dtype=float)
    if values.size == 0:
        raise ContractViolation("cannot summarize an empty sample")
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return Summary(mean=float(np.mean(values)), std=std, n=int(values.size))


class RankRow(BaseModel):
    problem: str
    metric: str
    ranks: Dict[str, float]


class FriedmanResult(BaseModel):
    statistic: float
    p_value: float


class RankTable(BaseModel):
    """
    Per-row ranks (1 = lowest mean) with per-metric and overall aggregates.

    Attributes:
    -----------
    subtotals : Dict[str, Dict[str, float]]
        Sum of an algorithm's ranks over the rows of one metric.
    metric_ranking : Dict[str, Dict[str, float]]
        Subtotal divided by the number of rows of that metric.
    total : Dict[str, float]
        Sum of all ranks of an algorithm.
    overall : Dict[str, float]
        Total divided by the number of rows.
    """

    algorithms: List[str]
    rows: List[RankRow]
    subtotals: Dict[str, Dict[str, float]]
    metric_ranking: Dict[str, Dict[str, float]]
    total: Dict[str, float]
    overall: Dict[str, float]
    friedman: Optional[FriedmanResult] = None

    def ordering(self) -> List[str]:
        """Algorithms from best to worst overall ranking."""
        return sorted(self.algorithms, key=lambda a: (self.overall[a], a))


def _algorithms(averages: Averages) -> List[str]:
    if not averages:
        raise ContractViolation("no rows to rank")
    rows = iter(averages.items())
    _, first = next(rows)
    algorithms = list(first)
    for (problem, metric), means in rows:
        if set(means) != set(algorithms):
            raise ContractViolation(
                f"row {problem}/{metric} ranks {sorted(means)}, expected {sorted(algorithms)}"
            )
    if len(algorithms) < 2:
        raise ContractViolation("ranking needs at least two algorithms")
    return algorithms


def friedman_chi_square(averages: Averages) -> Optional[FriedmanResult]:
    """
    Friedman statistic over the rows as blocks; None for fewer than three algorithms or a
    degenerate (all tied) table.
    """
    algorithms = _algorithms(averages)
    if len(algorithms) < 3:
        return None
    columns = [[means[a] for means in averages.values()] for a in algorithms]
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            statistic, p_value = friedmanchisquare(*columns)
    except ValueError as exc:
        logger.warning("Friedman statistic unavailable: %s", exc)
        return None
    if not (math.isfinite(statistic) and math.isfinite(p_value)):
        return None
    return FriedmanResult(statistic=float(statistic), p_value=float(p_value))


def friedman_ranks(averages: Averages) -> RankTable:
    """
    Rank algorithms within every (problem, metric) row by ascending mean, ties sharing the
    average of their positions, and aggregate the ranks per metric and overall.

    Arguments:
    averages -- (problem, metric) -> algorithm -> mean; every row holds the same algorithms.
    """
    algorithms = _algorithms(averages)
    rows: List[RankRow] = []
    subtotals: Dict[str, Dict[str, float]] = {}
    counts: Dict[str, int] = {}
    for (problem, metric), means in averages.items():
        ranks = rankdata([means[a] for a in algorithms], method="average")
        row = RankRow(
            problem=problem,
            metric=metric,
            ranks={a: float(r) for a, r in zip(algorithms, ranks)},
        )
        rows.append(row)
        bucket = subtotals.setdefault(metric, {a: 0.0 for a in algorithms})
        for a in algorithms:
            bucket[a] += row.ranks[a]
        counts[metric] = counts.get(metric, 0) + 1
    total = {a: sum(sub[a] for sub in subtotals.values()) for a in algorithms}
    return RankTable(
        algorithms=algorithms,
        rows=rows,
        subtotals=subtotals,
        metric_ranking={
            metric: {a: sub[a] / counts[metric] for a in algorithms}
            for metric, sub in subtotals.items()
        },
        total=total,
        overall={a: total[a] / len(rows) for a in algorithms},
        friedman=friedman_chi_square(averages),
    )


@lru_cache(maxsize=None)
def _subset_sums(m: int, n: int, total: int) -> int:
    """Ways to write `total` as a sum of m distinct integers from 1..n."""
    if m == 0:
        return 1 if total == 0 else 0
    if n < m or total < m * (m + 1) // 2 or total > m * (2 * n - m + 1) // 2:
        return 0
    return _subset_sums(m - 1, n - 1, total - n) + _subset_sums(m, n - 1, total)


def _exact_p(rank_sum: float, n1: int, n: int) -> float:
    centre = n1 * (n + 1) / 2.0
    observed = abs(rank_sum - centre)
    low, high = n1 * (n1 + 1) // 2, n1 * (2 * n - n1 + 1) // 2
    extreme = sum(
        _subset_sums(n1, n, s) for s in range(low, high + 1) if abs(s - centre) >= observed - 1e-9
    )
    return min(1.0, extreme / comb(n, n1, exact=True))


def _normal_p(ranks: np.ndarray, n1: int, n2: int) -> float:
    correction = tiecorrect(ranks)
    if correction == 0:
        return 1.0
    u = float(np.sum(ranks[:n1])) - n1 * (n1 + 1) / 2.0
    sd = math.sqrt(correction * n1 * n2 * (n1 + n2 + 1) / 12.0)
    z = (abs(u - n1 * n2 / 2.0) - 0.5) / sd
    return float(min(1.0, 2.0 * norm.sf(z)))


def wilcoxon_rank_sum(
    a: Iterable[float], b: Iterable[float], method: Literal["auto", "exact", "normal"] = "auto"
) -> float:
    """
    Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value.

    `auto` enumerates the exact null distribution when the samples hold at most 16 values
    together and no ties; otherwise it uses the normal approximation with tie-corrected
    variance and continuity correction.

    Arguments:
    a, b -- Non-empty samples.
    method -- Branch to use.
    """
    x = np.asarray(list(a), dtype=float)
    y = np.asarray(list(b), dtype=float)
    if x.size == 0 or y.size == 0:
        raise ContractViolation("wilcoxon_rank_sum needs two non-empty samples")
    pooled = np.concatenate([x, y])
    n1, n = x.size, pooled.size
    ranks = rankdata(pooled)
    tie_free = np.unique(pooled).size == n
    if method == "exact" and not tie_free:
        raise ContractViolation("exact rank-sum distribution requires tie-free samples")
    if method == "exact" or (method == "auto" and tie_free and n <= EXACT_MAX_SIZE):
        return _exact_p(float(np.sum(ranks[:n1])), n1, n)
    return _normal_p(ranks, n1, y.size)


class SignificanceEntry(BaseModel):
    problem: str
    metric: str
    baseline: str
    other: str
    p_value: Optional[float] = None
    significant: bool = False
    note: Optional[str] = None


class SignificanceReport(BaseModel):
    baseline: str
    alpha: float
    entries: List[SignificanceEntry]


def significance_report(
    samples: Sequence[MetricSample], baseline: str, alpha: float = 0.05
) -> SignificanceReport:
    """
    p-value of the baseline against every other algorithm on every (problem, metric) pair,
    significant when strictly below `alpha`. Pairs without baseline samples become entries
    carrying a note instead of a p-value.
    """
    if not any(s.algorithm == baseline for s in samples):
        raise ContractViolation(f"baseline {baseline!r} has no samples")
    grouped: Dict[RowKey, Dict[str, MetricSample]] = {}
    for sample in samples:
        grouped.setdefault((sample.problem, sample.metric), {})[sample.algorithm] = sample
    entries: List[SignificanceEntry] = []
    for (problem, metric), by_algorithm in grouped.items():
        others = sorted(a for a in by_algorithm if a != baseline)
        if baseline not in by_algorithm:
            for other in others:
                note = f"no {baseline} samples for {problem}/{metric}"
                logger.warning("Skipping %s vs %s: %s", baseline, other, note)
                entries.append(
                    SignificanceEntry(
                        problem=problem, metric=metric, baseline=baseline, other=other, note=note
                    )
                )
            continue
        for other in others:
            p = wilcoxon_rank_sum(by_algorithm[baseline].values, by_algorithm[other].values)
            entries.append(
                SignificanceEntry(
                    problem=problem,
                    metric=metric,
                    baseline=baseline,
                    other=other,
                    p_value=p,
                    significant=p < alpha,
                )
            )
    return SignificanceReport(baseline=baseline, alpha=alpha, entries=entries)


def _read_csv(path: Union[str, Path], columns: Sequence[str]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise StorageError(f"cannot read {path}: {exc}") from exc
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise ConfigError(f"{path}: missing column(s) {', '.join(missing)}")
    return frame


def is_summary_file(path: Union[str, Path]) -> bool:
    """True when the file has the summary layout rather than per-run metrics."""
    try:
        header = pd.read_csv(path, nrows=0).columns
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise StorageError(f"cannot read {path}: {exc}") from exc
    return {"metric", "mean"} <= set(header)


def load_metric_samples(
    path: Union[str, Path],
    label: Optional[str] = None,
    metrics: Sequence[str] = METRIC_NAMES,
) -> List[MetricSample]:
    """
    Per-run metrics file -> one sample per (algorithm, problem, metric). Non-finite values
    (spacing of single-point fronts) are dropped with a warning.

    Arguments:
    path -- CSV with the metrics header.
    label -- Replaces the algorithm column when given.
    metrics -- Metric names to extract.
    """
    frame = _read_csv(path, METRICS_COLUMNS)
    if label is not None:
        frame["algorithm"] = label
    samples: List[MetricSample] = []
    for (algorithm, problem), group in frame.groupby(["algorithm", "problem"], sort=False):
        for metric in metrics:
            column = group[METRIC_COLUMN[metric]].astype(float)
            finite = column[np.isfinite(column)]
            if len(finite) < len(column):
                logger.warning(
                    "%s: dropped %d non-finite %s value(s) of %s on %s",
                    path, len(column) - len(finite), metric, algorithm, problem,
                )
            if finite.empty:
                continue
            samples.append(
                MetricSample(
                    algorithm=str(algorithm),
                    problem=str(problem),
                    metric=metric,
                    values=finite.tolist(),
                )
            )
    return samples


def load_summary_means(
    path: Union[str, Path], label: Optional[str] = None
) -> Dict[RowKey, Dict[str, float]]:
    """Summary file -> (problem, metric) -> algorithm -> mean."""
    frame = _read_csv(path, SUMMARY_COLUMNS)
    if label is not None:
        frame["algorithm"] = label
    means: Dict[RowKey, Dict[str, float]] = {}
    for row in frame.itertuples(index=False):
        means.setdefault((str(row.problem), str(row.metric)), {})[str(row.algorithm)] = float(
            row.mean
        )
    return means


def summary_frame(samples: Sequence[MetricSample]) -> pd.DataFrame:
    """Table of mean and sample std per (problem, algorithm, metric)."""
    records = []
    for sample in samples:
        summary = summarize(sample)
        records.append(
            {
                "problem": sample.problem,
                "algorithm": sample.algorithm,
                "metric": sample.metric,
                "mean": summary.mean,
                "std": summary.std,
            }
        )
    return pd.DataFrame.from_records(records, columns=list(SUMMARY_COLUMNS))
