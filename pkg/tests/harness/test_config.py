import json

import pytest

from hetroute.common.exceptions.config_validation_error import ConfigValidationError
from hetroute.harness.config import ExperimentConfig, apply_overrides, build_config, load_config


def test_defaults_are_valid():
    config = load_config()
    assert config.nodes.pool_size == 15
    assert config.nodes.destination_id == 14
    assert len(config.nodes.relay_pool) == 13
    assert [t.num_subbands for t in config.technologies] == [3, 3]
    assert config.training.learning_rate == 2.5e-4
    assert config.training.batch_size == 256
    assert config.training.replay_capacity == 30_000
    assert config.training.gradient_steps == 2


def test_overrides_parse_json_values():
    data = apply_overrides({}, ["training.episodes=20", "bench.policies=[\"direct\"]", "name=demo"])
    assert data == {"training": {"episodes": 20}, "bench": {"policies": ["direct"]}, "name": "demo"}
    config = build_config({}, ["training.episodes=20", "seed=3"])
    assert config.training.episodes == 20
    assert config.seed == 3


def test_override_without_value_separator():
    with pytest.raises(ConfigValidationError) as info:
        apply_overrides({}, ["seed"])
    assert "key=value" in info.value.problems[0]


def test_all_problems_are_reported_together():
    with pytest.raises(ConfigValidationError) as info:
        build_config(
            {},
            [
                "training.learning_rate=-1",
                "bench.unknown_key=1",
            ],
        )
    problems = info.value.problems
    assert any(p.startswith("training.learning_rate") for p in problems)
    assert any("bench.unknown_key" in p for p in problems)


def test_cross_field_problems_are_split():
    with pytest.raises(ConfigValidationError) as info:
        build_config({}, ["nodes.destination_id=0", "policy=\"nope\""])
    problems = info.value.problems
    assert "nodes.source_id and nodes.destination_id must differ" in problems
    assert any("unknown policy 'nope'" in p for p in problems)


def test_grid_source_needs_a_file():
    with pytest.raises(ConfigValidationError, match="grid_file"):
        build_config({"channel": {"source": "grid"}})


def test_run_id_tracks_content(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"seed": 4, "training": {"episodes": 10}}))
    first = load_config(path)
    again = load_config(path)
    assert first.run_id("train") == again.run_id("train")
    assert len(first.run_id("train")) == 12
    assert load_config(path, ["seed=5"]).run_id("train") != first.run_id("train")


def test_run_id_separates_modes_but_not_execution_settings():
    config = build_config({})
    assert config.run_id("eval") != config.run_id("oracle")
    rerun = build_config({}, ["workers=4", "output_dir=\"elsewhere\"", "event_store_capacity=5"])
    assert rerun.run_id("eval") == config.run_id("eval")


def test_missing_or_malformed_files(tmp_path):
    with pytest.raises(ConfigValidationError, match="does not exist"):
        load_config(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigValidationError, match="invalid JSON"):
        load_config(bad)


def test_snapshot_round_trips():
    config = build_config({}, ["seed=11", "nodes.relay_count=4"])
    assert ExperimentConfig.model_validate(config.snapshot()) == config


def test_with_subbands_resplits_each_technology():
    config = build_config({})
    split = config.with_subbands(15)
    for before, after in zip(config.technologies, split.technologies):
        assert after.num_subbands == 15
        assert after.total_bandwidth == before.total_bandwidth
        assert after.subband_bandwidth == pytest.approx(before.total_bandwidth / 15)
    with pytest.raises(ConfigValidationError, match="subband_counts"):
        build_config({}, ["sweep.subband_counts=[0]"])
