import json

import pandas as pd
import pytest

from hetroute.harness.cli import run
from hetroute.harness.config import POLICY_NAMES, build_config
from hetroute.harness.policies import build_policy
from hetroute.harness.results import CHECKPOINT_FILE, EPISODES_FILE, SUMMARY_FILE, write_results
from hetroute.nn.checkpoint import load_checkpoint, read_metadata


def test_bench_reports_every_policy_and_the_oracle(small_config, tmp_path):
    result = run("bench", small_config)
    table = result.summary["table"]
    assert [row["policy"] for row in table] == list(POLICY_NAMES)
    assert all(row["episodes"] == 4 for row in table)

    oracle = result.summary["oracle"]
    assert oracle["topologies"] == 4
    for name, comparison in oracle["policies"].items():
        assert comparison["mean_rate"] <= oracle["mean_rate"] * (1 + 1e-12), name
        assert 0.0 <= comparison["fraction_of_oracle"] <= 1.0 + 1e-12

    run_dir = write_results(result, small_config, tmp_path)
    frame = pd.read_csv(run_dir / EPISODES_FILE)
    for row in table:
        rates = frame.loc[frame["policy"] == row["policy"], "rate"]
        assert rates.mean() == pytest.approx(row["mean_rate"], rel=1e-9)
    assert (frame["policy"] == "oracle").sum() == 4


def test_rerun_gives_byte_identical_summary(small_overrides, tmp_path):
    config = build_config({}, small_overrides + ["bench.policies=[\"direct\",\"widest\",\"dqn\"]"])
    first = write_results(run("bench", config), config, tmp_path / "a")
    second = write_results(run("bench", config), config, tmp_path / "b")
    assert first.name == second.name == config.run_id("bench")
    assert (first / SUMMARY_FILE).read_bytes() == (second / SUMMARY_FILE).read_bytes()


def test_train_then_eval_from_checkpoint(small_config, small_overrides, tmp_path):
    trained = run("train", small_config)
    assert len(trained.episodes) == 12
    assert trained.summary["training"]["final_epsilon"] == 0.0
    run_dir = write_results(trained, small_config, tmp_path)
    checkpoint = run_dir / CHECKPOINT_FILE
    assert read_metadata(checkpoint)["extra"]["run_id"] == trained.run_id
    assert load_checkpoint(checkpoint).num_neighbors == 3

    config = build_config({}, small_overrides + [f"checkpoint={checkpoint.as_posix()}"])
    evaluated = run("eval", config)
    assert evaluated.summary["evaluation"] == trained.summary["evaluation"]


def test_eval_of_a_baseline_needs_no_network(small_overrides):
    config = build_config({}, small_overrides + ["policy=\"widest\""])
    result = run("eval", config)
    assert result.summary["evaluation"]["policy"] == "widest"
    assert result.net is None
    assert len(result.episodes) == 4


def test_modes_on_one_config_write_separate_directories(small_overrides, tmp_path):
    config = build_config({}, small_overrides + ["policy=\"widest\""])
    evaluated = write_results(run("eval", config), config, tmp_path)
    optimum = write_results(run("oracle", config), config, tmp_path)
    assert evaluated != optimum
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted([evaluated.name, optimum.name])
    assert json.loads((evaluated / SUMMARY_FILE).read_text())["mode"] == "eval"
    assert json.loads((optimum / SUMMARY_FILE).read_text())["mode"] == "oracle"


def test_eval_saves_the_network_it_had_to_train(small_config, tmp_path):
    result = run("eval", small_config)
    assert result.net is not None
    run_dir = write_results(result, small_config, tmp_path)
    assert load_checkpoint(run_dir / CHECKPOINT_FILE).num_neighbors == 3


def test_oracle_mode(small_overrides):
    config = build_config({}, small_overrides + ["oracle.topologies=2"])
    result = run("oracle", config)
    optima = result.summary["optima"]
    assert len(optima) == 2
    assert all(o["rate"] > 0 and o["nodes"][0] == 0 and o["nodes"][-1] == 5 for o in optima)


def test_sweep_trains_one_cell_per_setting(small_overrides):
    config = build_config(
        {}, small_overrides + ["sweep.strategies=[\"distance\",\"channel\"]", "sweep.neighbor_counts=[2,3]"]
    )
    result = run("sweep", config)
    cells = [(row["neighbor_strategy"], row["num_neighbors"]) for row in result.summary["table"]]
    assert cells == [("distance", 2), ("distance", 3), ("channel", 2), ("channel", 3)]
    assert {row["policy"] for row in result.episodes} == {"distance-ne2", "distance-ne3", "channel-ne2", "channel-ne3"}


def test_dqn_policy_needs_a_network(small_config):
    with pytest.raises(ValueError, match="network"):
        build_policy("dqn", small_config)
    with pytest.raises(ValueError, match="unknown policy"):
        build_policy("random", small_config)


def test_sweep_over_subband_counts(small_overrides):
    config = build_config(
        {},
        small_overrides
        + ["sweep.strategies=[\"rate\"]", "sweep.neighbor_counts=[3]", "sweep.subband_counts=[1,4]"],
    )
    result = run("sweep", config)
    assert [row["num_subbands"] for row in result.summary["table"]] == [1, 4]
    assert {row["policy"] for row in result.episodes} == {"rate-ne3-b1", "rate-ne3-b4"}
