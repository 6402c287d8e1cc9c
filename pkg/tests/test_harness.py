import json
import math

import numpy as np
import pandas as pd
import pytest

from gmocso.harness import (ExperimentConfig, ReferenceSource, ResultStore, cmd_compare,
                            cmd_metrics, cmd_plotdata, cmd_reference, cmd_run, load_config)
from gmocso.harness.cli import main
from gmocso.harness.store import checksum
from gmocso.metrics import FrontPair, rgd, spacing, spread
from gmocso.problems import get_problem, load_front
from gmocso.utils import CommandFailed, ConfigError, StorageError
from tests.conftest import brute_force_non_dominated

METRICS_HEADER = "problem,algorithm,run,seed,rgd,spacing,spread,elapsed_seconds"


def exit_code(argv):
    with pytest.raises(SystemExit) as info:
        main([str(a) for a in argv])
    return info.value.code


def write_metrics(path, algorithm, values, problems=("ZDT1",)):
    rows = [METRICS_HEADER]
    for problem in problems:
        for run, v in enumerate(values):
            rows.append(f"{problem},{algorithm},{run},{run},{v},{v},{v},{v}")
    path.write_text("\n".join(rows) + "\n")
    return path


def test_config_defaults(write_config):
    config = load_config(write_config())
    assert config.seeds() == [7, 8]
    assert config.algorithm.smp == 2
    assert config.reference_source("ZDT1") == ReferenceSource(kind="analytic")
    assert config.reference_source("PressureVessel").kind == "pooled"


def test_config_errors(write_config, tmp_path):
    with pytest.raises(ConfigError, match="unknown_key"):
        load_config(write_config(unknown_key=1))
    with pytest.raises(ConfigError):
        load_config(write_config(runs=0))
    with pytest.raises(ConfigError):
        load_config(write_config(runs=1, reference_front={"ZDT1": "pooled"}))
    broken = tmp_path / "broken.json"
    broken.write_text('{"problems": ["ZDT1"],\n "runs": }')
    with pytest.raises(ConfigError, match=r"broken.json:2:"):
        load_config(broken)


def test_reference_source_parsing():
    assert str(ReferenceSource.parse("file:fronts/vessel.csv")) == "file:fronts/vessel.csv"
    assert ReferenceSource.parse("pooled").kind == "pooled"
    with pytest.raises(ConfigError):
        ReferenceSource.parse("exact")


def test_run_writes_results(write_config, tmp_path):
    out = tmp_path / "results"
    store = cmd_run(write_config(), out=out)
    for i in range(2):
        assert store.front_path("ZDT1", i).read_text().startswith("f1,f2\n")
        header = store.positions_path("ZDT1", i).read_text().splitlines()[0]
        assert header == "x1,x2,x3,x4,x5"
    runs = pd.read_csv(out / "ZDT1" / "runs.csv")
    assert list(runs.columns) == ["run", "seed", "elapsed_seconds", "front_size"]
    assert runs["seed"].tolist() == [7, 8]

    manifest = store.read_manifest()
    assert manifest.seeds == [7, 8]
    assert set(manifest.artifacts) >= {"ZDT1/run_0.front.csv", "ZDT1/runs.csv"}
    echo = json.loads(store.manifest_path.read_text())["config"]
    assert ExperimentConfig.parse_obj(echo).runs == 2


def test_runs_are_byte_identical(write_config, tmp_path):
    config = write_config()
    first = cmd_run(config, out=tmp_path / "a")
    second = cmd_run(config, out=tmp_path / "b", jobs=2)
    for i in range(2):
        assert first.front_path("ZDT1", i).read_bytes() == second.front_path("ZDT1", i).read_bytes()
    other = cmd_run(write_config("other.json", seed_base=8), out=tmp_path / "c")
    assert other.front_path("ZDT1", 0).read_bytes() == first.front_path("ZDT1", 1).read_bytes()
    assert other.front_path("ZDT1", 1).read_bytes() != first.front_path("ZDT1", 1).read_bytes()


def test_run_exit_codes(write_config, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert exit_code(["run", "--config", broken, "--out", tmp_path / "x"]) == 2
    assert exit_code(["run", "--config", write_config(extra=True), "--out", tmp_path / "x"]) == 2
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    assert exit_code(["run", "--config", write_config(), "--out", blocker]) == 3


def test_metrics_match_library(write_config, tmp_path):
    store = cmd_run(write_config(), out=tmp_path / "r")
    path = cmd_metrics(store.root)
    frame = pd.read_csv(path, float_precision="round_trip")
    assert ",".join(frame.columns) == METRICS_HEADER
    assert len(frame) == 2
    reference = get_problem("ZDT1", n_vars=5).reference_front(1000)
    front = load_front(store.front_path("ZDT1", 0))
    pair = FrontPair(reference=reference, approximate=front)
    row = frame.iloc[0]
    assert row["rgd"] == rgd(pair)
    assert row["spread"] == spread(pair)
    if len(front) > 1:
        assert row["spacing"] == spacing(front)
    assert np.array_equal(load_front(store.reference_path("ZDT1")), reference.points)

    summary = pd.read_csv(store.summary_path)
    assert list(summary.columns) == ["problem", "algorithm", "metric", "mean", "std"]
    assert set(summary["metric"]) <= {"rgd", "spacing", "spread", "elapsed"}
    assert summary.loc[summary["metric"] == "rgd", "mean"].item() == pytest.approx(frame["rgd"].mean())


def test_metrics_against_own_front(write_config, tmp_path):
    store = cmd_run(write_config(), out=tmp_path / "r")
    cmd_metrics(store.root, reference=f"file:{store.front_path('ZDT1', 0)}")
    row = pd.read_csv(store.metrics_path).iloc[0]
    assert row["rgd"] == 0.0
    assert row["spread"] == 0.0


def test_pressure_vessel_references(write_config, tmp_path):
    config = write_config(problems=["PressureVessel"], n_vars={})
    store = cmd_run(config, out=tmp_path / "pv")
    assert exit_code(["metrics", "--results", store.root, "--reference", "analytic"]) == 4
    cmd_metrics(store.root)
    pooled = load_front(store.reference_path("PressureVessel"))
    union = np.vstack([load_front(store.front_path("PressureVessel", i)) for i in range(2)])
    assert brute_force_non_dominated(pooled).all()
    assert all(any(np.array_equal(p, q) for q in union) for p in pooled)

    single = cmd_run(write_config("single.json", problems=["PressureVessel"], n_vars={}, runs=1), out=tmp_path / "pv1")
    assert exit_code(["metrics", "--results", single.root]) == 4


def test_metrics_without_results(tmp_path):
    assert exit_code(["metrics", "--results", tmp_path]) == 2


def test_compare_dominant_algorithm(tmp_path):
    a = write_metrics(tmp_path / "a.csv", "A", [0.1, 0.2, 0.3, 0.4, 0.5], ("ZDT1", "ZDT2"))
    b = write_metrics(tmp_path / "b.csv", "B", [1.1, 1.2, 1.3, 1.4, 1.5], ("ZDT1", "ZDT2"))
    report = cmd_compare([f"Mine={a}", str(b)], baseline="Mine", out=tmp_path / "cmp")
    assert report.ranks.overall == {"Mine": 1.0, "B": 2.0}
    assert len(report.significance.entries) == 6
    assert all(e.p_value < 0.05 and e.significant for e in report.significance.entries)
    ranks = pd.read_csv(tmp_path / "cmp" / "ranks.csv")
    assert list(ranks.columns) == ["problem", "metric", "B", "Mine"]
    assert (tmp_path / "cmp" / "significance.csv").is_file()


def test_compare_file_against_itself(tmp_path):
    a = write_metrics(tmp_path / "a.csv", "GMOCSO", [0.3, 0.1, 0.2])
    report = cmd_compare([str(a), str(a)], baseline="GMOCSO")
    assert report.ranks.algorithms == ["GMOCSO", "GMOCSO#2"]
    assert all(set(row.ranks.values()) == {1.5} for row in report.ranks.rows)
    assert all(e.p_value == 1.0 for e in report.significance.entries)


def test_compare_with_summary_file(tmp_path):
    a = write_metrics(tmp_path / "a.csv", "A", [0.1, 0.2, 0.3])
    summary = tmp_path / "published.csv"
    summary.write_text(
        "problem,algorithm,metric,mean,std\n"
        "ZDT1,MMA,rgd,0.05,0.01\nZDT1,MMA,spacing,0.5,0.1\nZDT1,MMA,spread,0.5,0.1\n"
    )
    report = cmd_compare([str(a), str(summary)], baseline="A", metrics=["rgd", "spacing", "spread"])
    assert report.ranks.rows[0].ranks == {"A": 2.0, "MMA": 1.0}
    assert all(e.p_value is None and e.note for e in report.significance.entries)


def test_compare_errors(tmp_path):
    a = write_metrics(tmp_path / "a.csv", "A", [0.1, 0.2], ("ZDT1",))
    b = write_metrics(tmp_path / "b.csv", "B", [0.1, 0.2], ("ZDT2",))
    with pytest.raises(CommandFailed) as info:
        cmd_compare([str(a), str(b)], baseline="A")
    assert info.value.exit_code == 2
    assert "ZDT1" in info.value.detail and "ZDT2" in info.value.detail
    assert exit_code(["compare", "--inputs", a, tmp_path / "b.csv", "--baseline", "Z"]) == 2


def test_plotdata(write_config, tmp_path):
    store = cmd_run(write_config(), out=tmp_path / "r")
    combined = cmd_plotdata(store.root, "ZDT1")
    target = store.plots_dir("ZDT1")
    reference = (target / "reference.csv").read_text().splitlines()
    assert reference[0] == "f1,f2"
    assert len(reference) == 1001
    frame = pd.read_csv(combined)
    sizes = [len(load_front(target / f"run_{i}.csv")) for i in range(2)]
    assert list(frame.columns) == ["run", "f1", "f2"]
    assert len(frame) == sum(sizes) + 1000
    assert (frame["run"] == "reference").sum() == 1000


def test_plotdata_errors(write_config, tmp_path):
    assert exit_code(["plotdata", "--results", tmp_path / "empty", "--problem", "ZDT1"]) == 2
    store = cmd_run(write_config(), out=tmp_path / "r")
    assert exit_code(["plotdata", "--results", store.root, "--problem", "ZDT9"]) == 2
    assert exit_code(["plotdata", "--results", store.root, "--problem", "ZDT2"]) == 2


def test_reference_command(tmp_path):
    path = tmp_path / "zdt1.csv"
    assert main(["reference", "--problem", "ZDT1", "--points", "3", "--out", str(path)]) == 0
    np.testing.assert_allclose(load_front(path), [[0, 1], [0.5, 1 - math.sqrt(0.5)], [1, 0]])
    assert len(load_front(cmd_reference("ZDT1", 1, tmp_path / "one.csv"))) == 1
    zdt3 = load_front(cmd_reference("ZDT3", 500, tmp_path / "zdt3.csv"))
    assert brute_force_non_dominated(zdt3).all()
    assert exit_code(["reference", "--problem", "PressureVessel", "--out", tmp_path / "pv.csv"]) == 4


def test_store_paths(tmp_path):
    store = ResultStore(root=tmp_path)
    assert store.front_path("ZDT1", 3) == tmp_path / "ZDT1" / "run_3.front.csv"
    assert store.relative(store.summary_path) == "summary.csv"


def test_checksum_of_unreadable_artifact(tmp_path):
    (tmp_path / "ZDT1").mkdir()
    with pytest.raises(StorageError) as info:
        checksum(tmp_path / "ZDT1")
    assert info.value.exit_code == 3
    with pytest.raises(StorageError):
        checksum(tmp_path / "missing.csv")
