from typing import List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from hetroute.agent.features import DEFAULT_SCALING, FeatureScaling, featurize
from hetroute.channel.technology import CommResource
from hetroute.neighbors.neighbor_set import NeighborSet, NeighborStrategy
from hetroute.neighbors.selection import select_neighbors
from hetroute.nn.q_network import QNetwork
from hetroute.routing.route_state import Decision, RouteState
from hetroute.routing.routing_policy import RoutingPolicy


class QTable(BaseModel):
    """Q-values of every (legal resource, neighbor slot) pair at one frontier.

    Rows follow `resources`, columns the neighbor slots; padded slots hold -inf.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    neighbors: NeighborSet
    resources: List[CommResource]
    observations: np.ndarray
    q_values: np.ndarray

    def best(self) -> tuple:
        """(row, slot) of the maximum; ties go to the lowest row, then slot."""
        flat = int(np.argmax(self.q_values))
        return divmod(flat, self.q_values.shape[1])


class DQNPolicy(RoutingPolicy):
    """
    Routing policy driven by the shared dueling Q-network.

    At each hop the network is run once per legal resource on that resource's
    state vector, and the (resource, neighbor) pair with the highest Q-value
    is taken. With probability `epsilon` a legal pair is drawn uniformly
    instead.
    """

    name: str = "DQNPolicy"
    type: str = "DQNPolicy"
    net: QNetwork
    strategy: NeighborStrategy = NeighborStrategy.RATE
    epsilon: float = 0.0
    scaling: FeatureScaling = DEFAULT_SCALING
    rng: Optional[np.random.Generator] = None

    class Builder(RoutingPolicy.Builder):
        """Concrete builder for DQNPolicy."""

        def _init_policy(self) -> "DQNPolicy":
            return DQNPolicy.model_construct()

        def net(self, net: QNetwork):
            self._policy.net = net
            return self

        def strategy(self, strategy: NeighborStrategy):
            self._policy.strategy = NeighborStrategy(strategy)
            return self

        def epsilon(self, epsilon: float):
            self._policy.epsilon = epsilon
            return self

        def scaling(self, scaling: FeatureScaling):
            self._policy.scaling = scaling
            return self

        def rng(self, rng: np.random.Generator):
            self._policy.rng = rng
            return self

        def build(self) -> "DQNPolicy":
            return DQNPolicy.model_validate(self._policy.__dict__)

    @property
    def num_neighbors(self) -> int:
        return self.net.num_neighbors

    def observe(self, state: RouteState) -> Optional[QTable]:
        """Q-table at the frontier, or None when there is nothing to choose."""
        neighbors = select_neighbors(state, self.strategy, self.num_neighbors)
        resources = state.legal_resources()
        if len(neighbors) == 0 or not resources:
            return None
        observations = np.stack(
            [featurize(state, neighbors, r, self.scaling) for r in resources]
        )
        q_values = self.net.forward(observations)
        q_values[:, ~np.asarray(neighbors.mask)] = -np.inf
        return QTable(
            neighbors=neighbors,
            resources=resources,
            observations=observations,
            q_values=q_values,
        )

    def _explore(self, state: RouteState) -> Optional[Decision]:
        neighbors = select_neighbors(state, self.strategy, self.num_neighbors)
        resources = state.legal_resources()
        if len(neighbors) == 0 or not resources:
            return None
        pick = int(self.rng.integers(len(resources) * len(neighbors)))
        row, slot = divmod(pick, len(neighbors))
        resource = resources[row]
        return Decision(
            next_node=neighbors.nodes[slot],
            resource=resource,
            slot=slot,
            observation=featurize(state, neighbors, resource, self.scaling),
            slot_mask=neighbors.mask,
        )

    def decide(self, state: RouteState) -> Optional[Decision]:
        if self.epsilon > 0.0:
            if self.rng is None:
                raise ValueError("an exploring DQNPolicy needs an rng")
            if self.rng.random() < self.epsilon:
                return self._explore(state)

        table = self.observe(state)
        if table is None:
            logger.warning(f"{self.name}: no legal action at node {state.frontier}")
            return None
        row, slot = table.best()
        return Decision(
            next_node=table.neighbors.nodes[slot],
            resource=table.resources[row],
            slot=slot,
            observation=table.observations[row],
            slot_mask=table.neighbors.mask,
        )
