from typing import Callable, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from hetroute.channel.technology import CommResource
from hetroute.common.decorators.record_episode_execution import record_episode_execution
from hetroute.common.exceptions.policy_error import PolicyError
from hetroute.common.models.run_context import RunContext
from hetroute.network.rates import hop_rates
from hetroute.network.route import Route
from hetroute.network.topology import Topology
from hetroute.routing.route_state import (
    Decision,
    FailureReason,
    RouteState,
    RouteStatus,
)
from hetroute.routing.routing_policy import RoutingPolicy

DecisionCallback = Callable[[RouteState], Optional[Decision]]


class HopRecord(BaseModel):
    hop_index: int
    frontier: int
    decision: Decision


class EpisodeResult(BaseModel):
    """Outcome of one source-to-destination episode.

    `rate` is the bottleneck rate in bits/s of the delivered route, and 0 when
    the flow never reached the destination.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    route: Optional[Route] = None
    visited: List[int]
    resources: List[CommResource]
    delivered: bool
    rate: float
    hop_rates: List[float] = Field(default_factory=list)
    failure_reason: Optional[str] = None
    trace: List[HopRecord] = Field(default_factory=list)

    @property
    def hops(self) -> int:
        return len(self.resources)


def _policy_name(policy: Union[RoutingPolicy, DecisionCallback]) -> str:
    return getattr(policy, "name", None) or getattr(policy, "__name__", "policy")


@record_episode_execution
def run_episode(
    topo: Topology,
    policy: Union[RoutingPolicy, DecisionCallback],
    max_hops: Optional[int] = None,
    run_context: Optional[RunContext] = None,
) -> EpisodeResult:
    """
    Drive `policy` hop by hop from the source until delivery or failure.

    Args:
        topo: the routing instance.
        policy: callable returning a legal Decision, or None for no action.
        max_hops: hop budget; defaults to the number of active nodes.
        run_context: context for the recorded events; the container's
            current context is used when omitted.

    Raises:
        PolicyError: the policy raised; the hop index is attached.
        RouteConstraintError: the policy returned an illegal decision.
    """
    state = RouteState.start(topo, max_hops)
    trace: List[HopRecord] = []

    while state.status is RouteStatus.BUILDING:
        hop_index = state.num_hops
        if not state.candidates():
            state.fail(FailureReason.NO_CANDIDATES)
            break
        if not state.legal_resources():
            state.fail(FailureReason.NO_LEGAL_RESOURCE)
            break

        frontier = state.frontier
        try:
            decision = policy(state)
        except PolicyError:
            raise
        except Exception as e:
            raise PolicyError(_policy_name(policy), hop_index, e) from e

        if decision is None:
            state.fail(FailureReason.NO_ACTION)
            break

        state.apply_decision(decision)
        trace.append(HopRecord(hop_index=hop_index, frontier=frontier, decision=decision))

    if state.status is RouteStatus.DELIVERED:
        route = state.to_route()
        rates = hop_rates(route, topo)
        return EpisodeResult(
            route=route,
            visited=list(state.visited),
            resources=list(state.resources_used),
            delivered=True,
            rate=min(rates),
            hop_rates=rates,
            trace=trace,
        )

    return EpisodeResult(
        visited=list(state.visited),
        resources=list(state.resources_used),
        delivered=False,
        rate=0.0,
        failure_reason=state.failure_reason.value if state.failure_reason else None,
        trace=trace,
    )
