import numpy as np
import pytest

from hetroute.agent.dqn_policy import DQNPolicy
from hetroute.baselines.greedy import (
    BestDirectionPolicy,
    CandidateScope,
    ClosestToDestinationPolicy,
    DestinationDirectlyPolicy,
    LargestDataRatePolicy,
    LeastInterferedPolicy,
    StrongestNeighborPolicy,
)
from hetroute.baselines.widest_path_policy import WidestPathPolicy
from hetroute.network.rates import end_to_end_rate, hop_rates
from hetroute.nn.q_network import QNetwork
from hetroute.routing.episode import run_episode
from tests.factories import random_topology, technologies

TOTAL_STEPS = 100_000


def all_policies(rng):
    net = QNetwork.initialize(5, rng, trunk_widths=(32,), stream_widths=(16,))
    policies = [
        DQNPolicy.Builder().net(net).strategy(s).epsilon(0.3).rng(rng).build()
        for s in ("distance", "channel", "rate")
    ]
    policies.append(WidestPathPolicy())
    for cls in (
        StrongestNeighborPolicy,
        BestDirectionPolicy,
        ClosestToDestinationPolicy,
        DestinationDirectlyPolicy,
        LeastInterferedPolicy,
        LargestDataRatePolicy,
    ):
        policies.append(cls())
        policies.append(cls.Builder().candidate_scope(CandidateScope.NEIGHBORS).num_neighbors(2).build())
    return policies


@pytest.mark.slow
def test_no_policy_emits_an_illegal_decision():
    rng = np.random.default_rng(2718)
    policies = all_policies(rng)
    steps = 0
    while steps < TOTAL_STEPS:
        topo = random_topology(rng, int(rng.integers(2, 16)), techs=technologies(num_subbands=3))
        for policy in policies:
            # run_episode raises on any loop, repeated resource or inactive node
            result = run_episode(topo, policy)
            steps += max(result.hops, 1)
            if result.delivered:
                rates = hop_rates(result.route, topo)
                assert result.rate == min(rates) == end_to_end_rate(result.route, topo)
