import numpy as np
import pytest

from hetroute.common.events.event import EventType
from hetroute.common.exceptions.policy_error import PolicyError
from hetroute.common.exceptions.route_constraint_error import RouteConstraintError
from hetroute.network.rates import end_to_end_rate
from hetroute.routing.episode import run_episode
from hetroute.routing.route_state import Decision
from tests.factories import random_topology, technologies, topology_from_positions


def direct(state):
    return Decision(next_node=state.destination, resource=state.legal_resources()[0])


def test_direct_policy_delivers_in_one_hop(line_topology):
    result = run_episode(line_topology, direct)
    assert result.delivered
    assert result.hops == 1
    assert result.rate == end_to_end_rate(result.route, line_topology)


def test_wandering_policy_fails_at_hop_budget(line_topology):
    def wander(state):
        # never picks the destination
        nodes = [n for n in state.candidates() if n != state.destination]
        return Decision(next_node=nodes[0], resource=state.legal_resources()[0])

    result = run_episode(line_topology, wander, 2)
    assert not result.delivered
    assert result.rate == 0.0
    assert result.failure_reason == "hop_budget"
    assert result.hops == 2


def test_no_legal_resource_fails():
    positions = [[0, 0, 0], [10, 0, 0], [20, 0, 0]]
    topo = topology_from_positions(positions, techs=technologies(num_subbands=1, count=1))

    def relay_first(state):
        return Decision(next_node=1, resource=state.legal_resources()[0])

    result = run_episode(topo, relay_first)
    assert result.failure_reason == "no_legal_resource"
    assert result.visited == [0, 1]


def test_none_is_no_action(line_topology):
    result = run_episode(line_topology, lambda state: None)
    assert result.failure_reason == "no_action"
    assert result.visited == [0]


def test_policy_exception_is_wrapped_with_hop_index(line_topology):
    calls = []

    def flaky(state):
        calls.append(state.num_hops)
        if state.num_hops == 1:
            raise RuntimeError("boom")
        return Decision(next_node=1, resource=state.legal_resources()[0])

    with pytest.raises(PolicyError, match="at hop 1") as error:
        run_episode(line_topology, flaky)
    assert isinstance(error.value.cause, RuntimeError)


def test_illegal_decision_propagates(line_topology):
    r0 = line_topology.resources[0]

    def repeat(state):
        return Decision(next_node=state.candidates()[0], resource=r0)

    with pytest.raises(RouteConstraintError):
        run_episode(line_topology, repeat)


def test_episode_events_are_recorded(line_topology, event_store, run_context):
    run_episode(line_topology, direct, run_context=run_context)
    types = [event.event_type for event in event_store.get_events()]
    assert types == [EventType.EPISODE_INVOKE, EventType.EPISODE_RESPOND]
    respond = event_store.get_events()[-1]
    assert respond.delivered
    assert respond.route_nodes == [0, 4]


def test_random_legal_policies_always_yield_valid_routes():
    rng = np.random.default_rng(17)

    def random_policy(state):
        node = state.candidates()[int(rng.integers(len(state.candidates())))]
        legal = state.legal_resources()
        return Decision(next_node=node, resource=legal[int(rng.integers(len(legal)))])

    for _ in range(200):
        topo = random_topology(rng, int(rng.integers(2, 8)), techs=technologies(2))
        result = run_episode(topo, random_policy)
        assert result.hops <= topo.num_active
        if result.delivered:
            assert result.rate == end_to_end_rate(result.route, topo)
