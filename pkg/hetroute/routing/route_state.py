from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from hetroute.channel.technology import CommResource
from hetroute.common.exceptions.route_constraint_error import RouteConstraintError
from hetroute.network.route import Route
from hetroute.network.topology import Topology


class RouteStatus(Enum):
    BUILDING = "building"
    DELIVERED = "delivered"
    FAILED = "failed"


class FailureReason(str, Enum):
    NO_CANDIDATES = "no_candidates"
    NO_LEGAL_RESOURCE = "no_legal_resource"
    NO_ACTION = "no_action"
    HOP_BUDGET = "hop_budget"


class Decision(BaseModel):
    """Next hop and resource chosen at the frontier.

    The learned policy also attaches what it saw when deciding: the state
    vector for the chosen resource, the neighbor slot it picked and the slot
    mask, so the step can be replayed as an experience.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    next_node: int
    resource: CommResource
    slot: Optional[int] = None
    observation: Optional[np.ndarray] = None
    slot_mask: Optional[Tuple[bool, ...]] = None


class RouteState(BaseModel):
    """Partial route under construction, owned by a single episode."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    topo: Topology
    visited: List[int]
    resources_used: List[CommResource] = Field(default_factory=list)
    established_tx: Dict[CommResource, List[int]] = Field(default_factory=dict)
    status: RouteStatus = RouteStatus.BUILDING
    max_hops: int
    failure_reason: Optional[FailureReason] = None

    @classmethod
    def start(cls, topo: Topology, max_hops: Optional[int] = None) -> "RouteState":
        # A loop-free route never has more hops than there are active nodes
        return cls(
            topo=topo,
            visited=[topo.source],
            max_hops=max_hops if max_hops is not None else topo.num_active,
        )

    @property
    def frontier(self) -> int:
        return self.visited[-1]

    @property
    def num_hops(self) -> int:
        return len(self.resources_used)

    @property
    def last_resource(self) -> Optional[CommResource]:
        return self.resources_used[-1] if self.resources_used else None

    @property
    def destination(self) -> int:
        return self.topo.destination

    def candidates(self) -> List[int]:
        """Active nodes not yet on the route, ascending."""
        visited = set(self.visited)
        return [node for node in self.topo.active_nodes_sorted if node not in visited]

    def legal_resources(self) -> List[CommResource]:
        """All resources except the one used on the previous hop, in resource order."""
        self._require_building()
        last = self.last_resource
        return [resource for resource in self.topo.resources if resource != last]

    def interferers_on(self, resource: CommResource) -> List[int]:
        """Transmitters already established on `resource`, in hop order."""
        return list(self.established_tx.get(resource, ()))

    def apply_decision(self, decision: Decision) -> "RouteState":
        self._require_building()
        if decision.next_node in self.visited:
            raise RouteConstraintError(
                "loop", f"node {decision.next_node} already on the route {self.visited}"
            )
        if decision.next_node not in self.topo.active_set:
            raise RouteConstraintError("inactive node", f"node {decision.next_node}")
        if decision.resource not in self.topo.resource_indices:
            raise RouteConstraintError("unknown resource", str(decision.resource))
        if decision.resource == self.last_resource:
            raise RouteConstraintError(
                "resource repeat",
                f"{decision.resource} was used on the previous hop",
            )

        self.established_tx.setdefault(decision.resource, []).append(self.frontier)
        self.visited.append(decision.next_node)
        self.resources_used.append(decision.resource)

        if decision.next_node == self.destination:
            self.status = RouteStatus.DELIVERED
        elif self.num_hops >= self.max_hops:
            self.fail(FailureReason.HOP_BUDGET)
        return self

    def fail(self, reason: FailureReason) -> "RouteState":
        self.status = RouteStatus.FAILED
        self.failure_reason = reason
        return self

    def to_route(self) -> Route:
        if self.status is not RouteStatus.DELIVERED:
            raise RouteConstraintError("route not delivered", self.status.value)
        return Route(nodes=list(self.visited), resources=list(self.resources_used))

    def _require_building(self) -> None:
        if self.status is not RouteStatus.BUILDING:
            raise RouteConstraintError("route no longer building", self.status.value)
