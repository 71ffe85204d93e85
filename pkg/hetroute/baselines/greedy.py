"""One-rule benchmark policies.

Each picks a next hop from the unvisited active nodes (or, with
`candidate_scope="neighbors"`, from the same neighbor set the agent sees).
Single-criterion rules then use the legal resource with the highest rate to
the chosen node; `LeastInterferedPolicy` and `LargestDataRatePolicy` score
(node, resource) pairs jointly.
"""

import math
from enum import Enum
from typing import List, Optional, Tuple

from loguru import logger

from hetroute.agent.features import bearing_difference
from hetroute.channel.technology import CommResource
from hetroute.network.rates import interference_power, link_rate
from hetroute.neighbors.neighbor_set import NeighborStrategy
from hetroute.neighbors.selection import mean_amplitude_gain, select_neighbors
from hetroute.routing.route_state import Decision, RouteState
from hetroute.routing.routing_policy import RoutingPolicy


class CandidateScope(str, Enum):
    ALL = "all"
    NEIGHBORS = "neighbors"


def best_rate_resource(
    state: RouteState, node: int
) -> Optional[Tuple[CommResource, float]]:
    """Legal resource with the highest rate from the frontier to `node`.

    Ties go to the lower resource index.
    """
    best: Optional[Tuple[CommResource, float]] = None
    for resource in state.legal_resources():
        rate = link_rate(
            state.frontier, node, resource, state.interferers_on(resource), state.topo
        )
        if best is None or rate > best[1]:
            best = (resource, rate)
    return best


class GreedyPolicy(RoutingPolicy):
    candidate_scope: CandidateScope = CandidateScope.ALL
    num_neighbors: int = 5
    neighbor_strategy: NeighborStrategy = NeighborStrategy.RATE

    class Builder(RoutingPolicy.Builder):
        def candidate_scope(self, scope: CandidateScope):
            self._policy.candidate_scope = CandidateScope(scope)
            return self

        def num_neighbors(self, num_neighbors: int):
            self._policy.num_neighbors = num_neighbors
            return self

        def neighbor_strategy(self, strategy: NeighborStrategy):
            self._policy.neighbor_strategy = NeighborStrategy(strategy)
            return self

    def candidates(self, state: RouteState) -> List[int]:
        if self.candidate_scope is CandidateScope.NEIGHBORS:
            neighbors = select_neighbors(
                state, self.neighbor_strategy, self.num_neighbors
            )
            return list(neighbors.nodes)
        return state.candidates()

    def score(self, state: RouteState, node: int) -> float:
        """Lower is better; only single-criterion rules implement it."""
        raise NotImplementedError("Subclasses must implement this method.")

    def decide(self, state: RouteState) -> Optional[Decision]:
        candidates = self.candidates(state)
        if not candidates:
            return None
        node = min(candidates, key=lambda n: (self.score(state, n), n))
        choice = best_rate_resource(state, node)
        if choice is None:
            logger.warning(f"{self.name}: no legal resource towards node {node}")
            return None
        return Decision(next_node=node, resource=choice[0])


class StrongestNeighborPolicy(GreedyPolicy):
    """Node with the strongest mean channel over technologies."""

    name: str = "strongest"
    type: str = "StrongestNeighborPolicy"

    class Builder(GreedyPolicy.Builder):
        def _init_policy(self) -> "StrongestNeighborPolicy":
            return StrongestNeighborPolicy()

    def score(self, state: RouteState, node: int) -> float:
        return -mean_amplitude_gain(state.frontier, node, state.topo)


class BestDirectionPolicy(GreedyPolicy):
    """Node whose bearing is closest to the bearing of the destination."""

    name: str = "direction"
    type: str = "BestDirectionPolicy"

    class Builder(GreedyPolicy.Builder):
        def _init_policy(self) -> "BestDirectionPolicy":
            return BestDirectionPolicy()

    def score(self, state: RouteState, node: int) -> float:
        topo = state.topo
        return bearing_difference(
            topo.position(state.frontier),
            topo.position(state.destination),
            topo.position(node),
        )


class ClosestToDestinationPolicy(GreedyPolicy):
    """Node nearest to the destination."""

    name: str = "closest"
    type: str = "ClosestToDestinationPolicy"

    class Builder(GreedyPolicy.Builder):
        def _init_policy(self) -> "ClosestToDestinationPolicy":
            return ClosestToDestinationPolicy()

    def score(self, state: RouteState, node: int) -> float:
        return state.topo.distance(node, state.destination)


class DestinationDirectlyPolicy(GreedyPolicy):
    """Single hop to the destination on its best resource."""

    name: str = "direct"
    type: str = "DestinationDirectlyPolicy"

    class Builder(GreedyPolicy.Builder):
        def _init_policy(self) -> "DestinationDirectlyPolicy":
            return DestinationDirectlyPolicy()

    def decide(self, state: RouteState) -> Optional[Decision]:
        choice = best_rate_resource(state, state.destination)
        if choice is None:
            return None
        return Decision(next_node=state.destination, resource=choice[0])


class LeastInterferedPolicy(GreedyPolicy):
    """(node, resource) with the least interference at the node.

    Ties go to the higher link rate, then the lower node id, then the lower
    resource index.
    """

    name: str = "least_interf"
    type: str = "LeastInterferedPolicy"

    class Builder(GreedyPolicy.Builder):
        def _init_policy(self) -> "LeastInterferedPolicy":
            return LeastInterferedPolicy()

    def decide(self, state: RouteState) -> Optional[Decision]:
        topo = state.topo
        best_key: Optional[tuple] = None
        best: Optional[Decision] = None
        for node in self.candidates(state):
            for index, resource in enumerate(state.legal_resources()):
                interferers = state.interferers_on(resource)
                key = (
                    interference_power(node, resource, interferers, topo),
                    -link_rate(state.frontier, node, resource, interferers, topo),
                    node,
                    index,
                )
                if best_key is None or key < best_key:
                    best_key = key
                    best = Decision(next_node=node, resource=resource)
        return best


class LargestDataRatePolicy(GreedyPolicy):
    """(node, resource) with the highest interference-aware link rate.

    Ties go to the lower node id, then the lower resource index.
    """

    name: str = "max_rate"
    type: str = "LargestDataRatePolicy"

    class Builder(GreedyPolicy.Builder):
        def _init_policy(self) -> "LargestDataRatePolicy":
            return LargestDataRatePolicy()

    def decide(self, state: RouteState) -> Optional[Decision]:
        best_rate = -math.inf
        best: Optional[Decision] = None
        for node in sorted(self.candidates(state)):
            choice = best_rate_resource(state, node)
            if choice is not None and choice[1] > best_rate:
                best_rate = choice[1]
                best = Decision(next_node=node, resource=choice[0])
        return best
