from typing import Optional

from loguru import logger

from hetroute.baselines.link_graph import build_link_graph
from hetroute.baselines.widest_path import widest_path
from hetroute.common.exceptions.unreachable_error import UnreachableError
from hetroute.routing.route_state import Decision, RouteState
from hetroute.routing.routing_policy import RoutingPolicy


class WidestPathPolicy(RoutingPolicy):
    """
    Recompute the widest path from the frontier at every hop and take its
    first hop, on the resource that gives that edge its weight.

    Edge weights see the interference of hops already established but not
    that of the hops the flow will add later.
    """

    name: str = "widest"
    type: str = "WidestPathPolicy"

    class Builder(RoutingPolicy.Builder):
        """Concrete builder for WidestPathPolicy."""

        def _init_policy(self) -> "WidestPathPolicy":
            return WidestPathPolicy()

    def decide(self, state: RouteState) -> Optional[Decision]:
        graph = build_link_graph(state)
        try:
            path = widest_path(graph, state.frontier, state.destination)
        except UnreachableError as e:
            logger.warning(f"{self.name}: {e}")
            return None
        next_node = path[1]
        return Decision(
            next_node=next_node, resource=graph.resources[(state.frontier, next_node)]
        )
