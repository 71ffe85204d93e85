"""Choosing the Ne candidate next hops the agent observes and acts on.

Three rankings of the unvisited nodes seen from the frontier: Euclidean
distance (ascending), mean amplitude gain over technologies (descending) and
mean interference-aware rate over technologies (descending). Each metric is
taken on the first subband of every technology. Ties go to the lower node id.
"""

import math
from typing import Callable, Dict, Sequence

from hetroute.channel.technology import CommResource
from hetroute.network.rates import link_rate
from hetroute.network.topology import Topology
from hetroute.neighbors.neighbor_set import NeighborSet, NeighborStrategy
from hetroute.routing.route_state import RouteState


def mean_amplitude_gain(frontier: int, node: int, topo: Topology) -> float:
    """(1/M) * sum over technologies of |h| between frontier and node."""
    return sum(
        math.sqrt(topo.gain(frontier, node, tech.id)) for tech in topo.technologies
    ) / len(topo.technologies)


def mean_first_subband_rate(frontier: int, node: int, state: RouteState) -> float:
    """(1/M) * sum over technologies of the rate on their first subband.

    Interference comes from the hops already established on that subband.
    """
    topo = state.topo
    total = 0.0
    for tech in topo.technologies:
        resource = CommResource(technology_id=tech.id, subband_index=0)
        total += link_rate(frontier, node, resource, state.interferers_on(resource), topo)
    return total / len(topo.technologies)


def _top(
    candidates: Sequence[int],
    key: Callable[[int], float],
    n_e: int,
    strategy: NeighborStrategy,
) -> NeighborSet:
    ranked = sorted(candidates, key=lambda node: (key(node), node))
    return NeighborSet(nodes=tuple(ranked[:n_e]), strategy=strategy, size=n_e)


def select_distance(
    frontier: int, candidates: Sequence[int], topo: Topology, n_e: int
) -> NeighborSet:
    return _top(
        candidates,
        lambda node: topo.distance(frontier, node),
        n_e,
        NeighborStrategy.DISTANCE,
    )


def select_channel(
    frontier: int, candidates: Sequence[int], topo: Topology, n_e: int
) -> NeighborSet:
    return _top(
        candidates,
        lambda node: -mean_amplitude_gain(frontier, node, topo),
        n_e,
        NeighborStrategy.CHANNEL,
    )


def select_rate(
    frontier: int, candidates: Sequence[int], state: RouteState, n_e: int
) -> NeighborSet:
    return _top(
        candidates,
        lambda node: -mean_first_subband_rate(frontier, node, state),
        n_e,
        NeighborStrategy.RATE,
    )


def select_neighbors(
    state: RouteState, strategy: NeighborStrategy, n_e: int
) -> NeighborSet:
    """Neighbors of the current frontier among the unvisited active nodes."""
    strategy = NeighborStrategy(strategy)
    frontier = state.frontier
    candidates = state.candidates()
    if strategy is NeighborStrategy.RATE:
        return select_rate(frontier, candidates, state, n_e)
    selectors: Dict[NeighborStrategy, Callable[..., NeighborSet]] = {
        NeighborStrategy.DISTANCE: select_distance,
        NeighborStrategy.CHANNEL: select_channel,
    }
    return selectors[strategy](frontier, candidates, state.topo, n_e)

