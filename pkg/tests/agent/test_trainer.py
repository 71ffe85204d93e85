import math

import numpy as np
import pytest

from hetroute.agent.dqn_policy import DQNPolicy
from hetroute.agent.trainer import (
    EpsilonSchedule,
    TrainingParams,
    TrainingStreams,
    episode_experiences,
    episode_reward,
    train,
)
from hetroute.common.exceptions.training_diverged_error import TrainingDivergedError
from hetroute.network.rates import end_to_end_rate
from hetroute.network.route import Route
from hetroute.nn.q_network import QNetwork
from hetroute.routing.episode import run_episode
from hetroute.routing.route_state import Decision, RouteState
from tests.factories import technologies, topology_from_positions

SMALL = dict(trunk_widths=(32, 32), stream_widths=(16,))


def test_epsilon_schedule_endpoints():
    schedule = EpsilonSchedule()
    assert schedule.decay_episodes(1000) == 800
    assert schedule.value(0, 1000) == 1.0
    assert schedule.value(799, 1000) == pytest.approx(0.05)
    assert schedule.value(800, 1000) == 0.0
    assert schedule.value(999, 1000) == 0.0
    values = [schedule.value(e, 1000) for e in range(800)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_single_episode_schedule_explores_not_at_all():
    schedule = EpsilonSchedule(decay_fraction=0.0)
    assert schedule.value(0, 10) == 0.0


def test_every_decision_gets_the_episode_reward(square_topology):
    net = QNetwork.initialize(3, np.random.default_rng(0), **SMALL)
    policy = DQNPolicy.Builder().net(net).epsilon(0.5).rng(np.random.default_rng(3)).build()
    params = TrainingParams(reference_rate=1e6)
    for _ in range(20):
        result = run_episode(square_topology, policy)
        reward = episode_reward(result, params)
        experiences = episode_experiences(result, reward)
        assert len(experiences) == result.hops
        if result.delivered:
            assert reward == end_to_end_rate(result.route, square_topology) / 1e6
        else:
            assert reward == 0.0
        assert {e.reward for e in experiences} <= {reward}


def test_heuristic_decisions_produce_no_experiences(line_topology):
    def direct(state):
        return Decision(next_node=state.destination, resource=state.legal_resources()[0])

    result = run_episode(line_topology, direct)
    assert episode_experiences(result, 1.0) == []


def test_one_hop_world_learns_the_link_rate():
    topo = topology_from_positions(
        [[0, 0, 1], [40, 0, 1]], techs=technologies(num_subbands=1, count=1)
    )
    direct_rate = end_to_end_rate(Route(nodes=[0, 1], resources=topo.resources), topo)
    assert direct_rate > 0.0
    params = TrainingParams(
        episodes=2000,
        num_neighbors=1,
        learning_rate=1e-3,
        batch_size=32,
        reference_rate=direct_rate,
        log_every=500,
        **SMALL,
    )
    result = train(params, lambda rng: topo, TrainingStreams.from_seed(5))
    assert len(result.log) == 2000
    assert all(row.delivered and row.reward == 1.0 for row in result.log)

    policy = DQNPolicy.Builder().net(result.net).build()
    q = policy.observe(RouteState.start(topo)).q_values[0, 0]
    assert q == pytest.approx(1.0, rel=0.05)


def test_training_is_reproducible(square_topology):
    params = TrainingParams(episodes=30, num_neighbors=3, batch_size=8, **SMALL)
    first = train(params, lambda rng: square_topology, TrainingStreams.from_seed(9))
    second = train(params, lambda rng: square_topology, TrainingStreams.from_seed(9))
    assert [r.model_dump() for r in first.log] == [r.model_dump() for r in second.log]
    for name, value in first.net.params.items():
        assert np.array_equal(value, second.net.params[name])


def test_nan_network_raises_divergence(square_topology):
    net = QNetwork.initialize(3, np.random.default_rng(0), **SMALL)
    for value in net.params.values():
        value[...] = math.nan
    params = TrainingParams(episodes=5, num_neighbors=3, batch_size=4, **SMALL)
    with pytest.raises(TrainingDivergedError) as info:
        train(params, lambda rng: square_topology, TrainingStreams.from_seed(0), net=net)
    assert info.value.episode == 0
