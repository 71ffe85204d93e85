from typing import Any, Dict, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from hetroute.channel.technology import CommResource
from hetroute.network.rates import link_rate
from hetroute.routing.route_state import RouteState

Edge = Tuple[int, int]


class LinkGraph(BaseModel):
    """Directed graph with non-negative edge weights.

    Each edge of `digraph` carries a `weight` and, optionally, the `resource`
    that achieves it. The model can also be built from `weights` and
    `resources` mappings keyed by edge.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: Tuple[int, ...]
    digraph: nx.DiGraph

    @model_validator(mode="before")
    @classmethod
    def _from_mappings(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "digraph" in data:
            return data
        data = dict(data)
        weights: Dict[Edge, float] = data.pop("weights", {})
        resources: Dict[Edge, CommResource] = data.pop("resources", {})
        digraph = nx.DiGraph()
        digraph.add_nodes_from(data.get("nodes", ()))
        for (i, j), weight in sorted(weights.items()):
            if (i, j) in resources:
                digraph.add_edge(i, j, weight=weight, resource=resources[(i, j)])
            else:
                digraph.add_edge(i, j, weight=weight)
        data["digraph"] = digraph
        return data

    @model_validator(mode="after")
    def _validate(self) -> "LinkGraph":
        known = set(self.nodes)
        for i, j, weight in self.digraph.edges(data="weight"):
            if i == j:
                raise ValueError(f"self-edge on node {i}")
            if i not in known or j not in known:
                raise ValueError(f"edge ({i}, {j}) leaves the node set")
            if weight is None or not weight >= 0.0:
                raise ValueError(f"edge ({i}, {j}) has negative weight {weight}")
        return self

    @property
    def weights(self) -> Dict[Edge, float]:
        return {(i, j): w for i, j, w in self.digraph.edges(data="weight")}

    @property
    def resources(self) -> Dict[Edge, CommResource]:
        return {
            (i, j): r
            for i, j, r in self.digraph.edges(data="resource")
            if r is not None
        }

    def weight(self, i: int, j: int) -> float:
        data = self.digraph.get_edge_data(i, j)
        return 0.0 if data is None else data["weight"]

    def bottleneck(self, path: List[int]) -> float:
        return min(self.weight(i, j) for i, j in zip(path[:-1], path[1:]))


def build_link_graph(state: RouteState) -> LinkGraph:
    """
    Graph over the frontier and every unvisited active node.

    An edge weight is the best rate over resources, given the interference of
    the hops already established. Only edges leaving the frontier exclude the
    resource of the previous hop. Edges into the frontier are left out.
    """
    topo = state.topo
    frontier = state.frontier
    unvisited = state.candidates()
    nodes = (frontier, *unvisited)
    legal = state.legal_resources()
    digraph = nx.DiGraph()
    digraph.add_nodes_from(nodes)
    for tx in nodes:
        options = legal if tx == frontier else topo.resources
        for rx in unvisited:
            if rx == tx:
                continue
            best_rate, best_resource = -1.0, None
            for resource in options:
                rate = link_rate(tx, rx, resource, state.interferers_on(resource), topo)
                if rate > best_rate:
                    best_rate, best_resource = rate, resource
            if best_resource is not None:
                digraph.add_edge(tx, rx, weight=best_rate, resource=best_resource)
    return LinkGraph(nodes=nodes, digraph=digraph)
