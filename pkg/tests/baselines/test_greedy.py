import numpy as np
import pytest

from hetroute.baselines.greedy import (
    BestDirectionPolicy,
    CandidateScope,
    ClosestToDestinationPolicy,
    DestinationDirectlyPolicy,
    LargestDataRatePolicy,
    LeastInterferedPolicy,
    StrongestNeighborPolicy,
    best_rate_resource,
)
from hetroute.network.rates import interference_power, link_rate
from hetroute.routing.episode import run_episode
from hetroute.routing.route_state import Decision, RouteState
from tests.factories import random_topology, technologies, topology_from_positions

ALL_POLICIES = [
    StrongestNeighborPolicy,
    BestDirectionPolicy,
    ClosestToDestinationPolicy,
    DestinationDirectlyPolicy,
    LeastInterferedPolicy,
    LargestDataRatePolicy,
]


def test_direct_route_is_the_best_single_link():
    rng = np.random.default_rng(8)
    for _ in range(20):
        topo = random_topology(rng, 5, techs=technologies(2))
        result = run_episode(topo, DestinationDirectlyPolicy())
        best = max(link_rate(topo.source, topo.destination, r, [], topo) for r in topo.resources)
        assert result.delivered and result.hops == 1
        assert result.rate == best


def test_strongest_with_a_single_candidate_goes_there():
    topo = topology_from_positions([[0, 0, 1], [70, 20, 1]], techs=technologies(2))
    decision = StrongestNeighborPolicy().decide(RouteState.start(topo))
    assert decision.next_node == 1
    assert decision.resource == best_rate_resource(RouteState.start(topo), 1)[0]


def test_closest_and_direction_on_a_line(line_topology):
    # every relay lies on the bearing, so the destination itself wins on distance
    assert ClosestToDestinationPolicy().decide(RouteState.start(line_topology)).next_node == 4
    # all bearings tie at zero: lowest node id
    assert BestDirectionPolicy().decide(RouteState.start(line_topology)).next_node == 1


def test_strongest_picks_the_nearest_relay(line_topology):
    assert StrongestNeighborPolicy().decide(RouteState.start(line_topology)).next_node == 1


def brute_force_max_rate(state: RouteState) -> Decision:
    best = None
    for node in state.candidates():
        for index, resource in enumerate(state.legal_resources()):
            rate = link_rate(state.frontier, node, resource, state.interferers_on(resource), state.topo)
            key = (-rate, node, index)
            if best is None or key < best[0]:
                best = (key, Decision(next_node=node, resource=resource))
    return best[1]


def test_max_rate_matches_enumeration(square_topology):
    rng = np.random.default_rng(4)
    topologies = [square_topology] + [
        random_topology(rng, 4, techs=technologies(2)) for _ in range(20)
    ]
    for topo in topologies:
        state = RouteState.start(topo)
        for _ in range(2):
            if state.destination in state.visited:
                break
            expected = brute_force_max_rate(state)
            decision = LargestDataRatePolicy().decide(state)
            assert (decision.next_node, decision.resource) == (expected.next_node, expected.resource)
            state.apply_decision(decision)


def test_least_interfered_avoids_busy_resources(square_topology):
    state = RouteState.start(square_topology)
    t0_0 = square_topology.resources[0]
    relay = 2
    state.apply_decision(Decision(next_node=relay, resource=square_topology.resources[1]))
    state.apply_decision(Decision(next_node=1, resource=t0_0))
    decision = LeastInterferedPolicy().decide(state)
    interferers = state.interferers_on(decision.resource)
    assert interference_power(decision.next_node, decision.resource, interferers, square_topology) == 0.0


def test_neighbor_scope_restricts_candidates(line_topology):
    policy = (
        ClosestToDestinationPolicy.Builder()
        .candidate_scope(CandidateScope.NEIGHBORS)
        .num_neighbors(2)
        .neighbor_strategy("distance")
        .build()
    )
    assert policy.candidate_scope is CandidateScope.NEIGHBORS
    decision = policy.decide(RouteState.start(line_topology))
    assert decision.next_node == 2


@pytest.mark.parametrize("policy_cls", ALL_POLICIES)
def test_every_baseline_delivers_legally(policy_cls):
    rng = np.random.default_rng(13)
    policy = policy_cls.Builder().build()
    for _ in range(15):
        topo = random_topology(rng, int(rng.integers(2, 9)), techs=technologies(2))
        result = run_episode(topo, policy)
        assert result.delivered
        assert all(a != b for a, b in zip(result.resources, result.resources[1:]))
        assert len(set(result.visited)) == len(result.visited)
