import numpy as np
import pytest

from hetroute.common.containers.container import container
from hetroute.common.event_stores import EventStoreInMemory
from hetroute.common.models.run_context import RunContext
from hetroute.network.topology import Topology
from tests.factories import technologies, topology_from_positions


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="run desk-scale training checks",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def run_context() -> RunContext:
    return RunContext(run_id="test_run", mode="test", seed=0)


@pytest.fixture
def event_store() -> EventStoreInMemory:
    store = EventStoreInMemory()
    container.register_event_store(EventStoreInMemory, store)
    return store


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def line_topology() -> Topology:
    """Five nodes on a line, 40 m apart, two single-subband technologies."""
    positions = [[40.0 * i, 0.0, 1.0] for i in range(5)]
    return topology_from_positions(positions, techs=technologies(num_subbands=1))


@pytest.fixture
def square_topology() -> Topology:
    """Four nodes, two technologies with two subbands each."""
    positions = [[0, 0, 1], [60, 10, 1], [20, 70, 2], [90, 80, 1]]
    return topology_from_positions(positions, techs=technologies(num_subbands=2))
