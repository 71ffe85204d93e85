from typing import Optional

import numpy as np
import pytest

from hetroute.agent.evaluation import evaluate, evaluate_policy, summarize, EpisodeOutcome
from hetroute.common.events.event import EventType
from hetroute.nn.q_network import QNetwork
from hetroute.oracle.exhaustive import exhaustive_optimum
from hetroute.routing.route_state import Decision, RouteState
from hetroute.routing.routing_policy import RoutingPolicy
from tests.factories import random_topology, technologies


class RefusingPolicy(RoutingPolicy):
    name: str = "refuse"
    type: str = "RefusingPolicy"

    def decide(self, state: RouteState) -> Optional[Decision]:
        return None


class ScriptedRoutePolicy(RoutingPolicy):
    """Replays a fixed route hop by hop."""

    name: str = "scripted"
    type: str = "ScriptedRoutePolicy"
    nodes: list
    resources: list

    def decide(self, state: RouteState) -> Optional[Decision]:
        hop = state.num_hops
        return Decision(next_node=self.nodes[hop + 1], resource=self.resources[hop])


@pytest.fixture
def topologies():
    rng = np.random.default_rng(21)
    return [random_topology(rng, int(rng.integers(3, 8)), techs=technologies(2)) for _ in range(12)]


def test_evaluation_is_deterministic(topologies):
    net = QNetwork.initialize(3, np.random.default_rng(4), trunk_widths=(16,), stream_widths=(8,))
    first = evaluate(net, topologies)
    second = evaluate(net, topologies)
    assert first.model_dump() == second.model_dump()
    assert len(first.outcomes) == len(topologies)


def test_worker_count_does_not_change_the_report(topologies):
    net = QNetwork.initialize(3, np.random.default_rng(4), trunk_widths=(16,), stream_widths=(8,))
    assert evaluate(net, topologies, workers=2).model_dump() == evaluate(net, topologies).model_dump()


def test_worker_episodes_are_recorded_in_the_parent_store(topologies, event_store, run_context):
    net = QNetwork.initialize(3, np.random.default_rng(4), trunk_widths=(16,), stream_widths=(8,))
    evaluate(net, topologies, run_context=run_context)
    sequential = [e.route_nodes for e in event_store.get_events_by_type(EventType.EPISODE_RESPOND)]
    event_store.clear_events()

    evaluate(net, topologies, workers=2, run_context=run_context)
    responses = event_store.get_events_by_type(EventType.EPISODE_RESPOND)
    assert [e.route_nodes for e in responses] == sequential
    assert len(event_store.get_events_by_type(EventType.EPISODE_INVOKE)) == len(topologies)
    assert all(e.run_context == run_context for e in event_store.get_events())


def test_all_failures_report_zero(topologies):
    report = evaluate_policy(RefusingPolicy(), topologies)
    assert report.mean_rate == 0.0
    assert report.delivery_ratio == 0.0
    assert report.percentiles == {"p10": 0.0, "p50": 0.0, "p90": 0.0}
    assert all(o.failure_reason == "no_action" for o in report.outcomes)


def test_replaying_the_optimum_reproduces_its_rate(topologies):
    for topo in topologies[:6]:
        best = exhaustive_optimum(topo)
        policy = ScriptedRoutePolicy(nodes=list(best.nodes), resources=list(best.resources))
        report = evaluate_policy(policy, [topo])
        assert report.outcomes[0].rate == best.rate


def test_summary_statistics():
    outcomes = [
        EpisodeOutcome(topology_index=0, delivered=True, rate=4.0, hops=1),
        EpisodeOutcome(topology_index=1, delivered=False, rate=0.0, hops=2, failure_reason="hop_budget"),
        EpisodeOutcome(topology_index=2, delivered=True, rate=2.0, hops=2),
    ]
    report = summarize("p", outcomes)
    assert report.mean_rate == pytest.approx(2.0)
    assert report.mean_delivered_rate == pytest.approx(3.0)
    assert report.delivery_ratio == pytest.approx(2 / 3)
    assert report.percentiles["p50"] == pytest.approx(3.0)
    assert report.rates == [4.0, 0.0, 2.0]
