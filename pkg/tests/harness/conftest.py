import pytest

from hetroute.harness.config import build_config

SMALL_RUN = [
    "training.episodes=12",
    "training.trunk_widths=[16]",
    "training.stream_widths=[8]",
    "training.batch_size=8",
    "training.num_neighbors=3",
    "training.log_every=5",
    "nodes.pool_size=6",
    "nodes.destination_id=5",
    "nodes.relay_count_range=[1,3]",
    "evaluation.topologies=4",
    "bench.topologies=4",
    "event_store_capacity=200",
]


@pytest.fixture
def small_config():
    return build_config({}, SMALL_RUN)


@pytest.fixture
def small_overrides():
    return list(SMALL_RUN)
