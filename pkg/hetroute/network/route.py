from typing import List

from pydantic import BaseModel, Field

from hetroute.channel.technology import CommResource
from hetroute.common.exceptions.route_constraint_error import RouteConstraintError
from hetroute.network.topology import Topology


class Route(BaseModel):
    """Nodes from source to destination and the resource used on each hop."""

    nodes: List[int]
    resources: List[CommResource] = Field(default_factory=list)

    @property
    def num_hops(self) -> int:
        return len(self.resources)

    def hops(self) -> List[tuple]:
        """(tx, rx, resource) per hop, in route order."""
        return [
            (self.nodes[i], self.nodes[i + 1], self.resources[i])
            for i in range(len(self.resources))
        ]


def route_violations(route: Route, topo: Topology) -> List[str]:
    """Every constraint the route breaks on the given topology."""
    problems: List[str] = []
    if len(route.nodes) < 2:
        problems.append("route needs at least source and destination")
    if len(route.resources) != len(route.nodes) - 1:
        problems.append(
            f"length mismatch: {len(route.nodes)} nodes but "
            f"{len(route.resources)} resources"
        )
    if len(set(route.nodes)) != len(route.nodes):
        problems.append("loop: a node appears more than once")
    for i in range(1, len(route.resources)):
        if route.resources[i] == route.resources[i - 1]:
            problems.append(f"resource repeat: hops {i - 1} and {i} both use {route.resources[i]}")
    if route.nodes and route.nodes[0] != topo.source:
        problems.append(f"first node {route.nodes[0]} is not the source {topo.source}")
    if route.nodes and route.nodes[-1] != topo.destination:
        problems.append(
            f"last node {route.nodes[-1]} is not the destination {topo.destination}"
        )
    inactive = [node for node in route.nodes if node not in topo.active_set]
    if inactive:
        problems.append(f"inactive nodes {inactive}")
    unknown = [str(r) for r in route.resources if r not in topo.resource_indices]
    if unknown:
        problems.append(f"unknown resources {unknown}")
    return problems


def check_route(route: Route, topo: Topology) -> None:
    problems = route_violations(route, topo)
    if problems:
        raise RouteConstraintError("invalid route", "; ".join(problems))
