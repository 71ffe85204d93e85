from typing import Any, Dict, Optional

from openinference.semconv.trace import OpenInferenceSpanKindValues
from pydantic import BaseModel, ConfigDict

from hetroute.common.models.default_id import default_id
from hetroute.routing.route_state import Decision, RouteState


class RoutingPolicy(BaseModel):
    """
    A base class for hop-by-hop routing policies.

    A policy looks at the partial route and returns the next hop and resource,
    or None when it has no action to offer. Every learned and heuristic policy
    inherits from this class and can be handed to `run_episode`.
    """

    policy_id: str = default_id
    name: str
    type: str
    oi_span_type: OpenInferenceSpanKindValues = OpenInferenceSpanKindValues.AGENT

    model_config = ConfigDict(arbitrary_types_allowed=True)

    class Builder:
        """Inner builder class for policy construction."""

        def __init__(self):
            self._policy = self._init_policy()

        def _init_policy(self) -> "RoutingPolicy":
            raise NotImplementedError

        def name(self, name: str):
            self._policy.name = name
            return self

        def type(self, type_name: str):
            self._policy.type = type_name
            return self

        def build(self) -> "RoutingPolicy":
            return self._policy

    def decide(self, state: RouteState) -> Optional[Decision]:
        """
        Pick the next hop and resource for the frontier of `state`.

        Raises:
            NotImplementedError: If the method is not implemented by a subclass.
        """
        raise NotImplementedError("Subclasses must implement this method.")

    def __call__(self, state: RouteState) -> Optional[Decision]:
        return self.decide(state)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "policy_id": self.policy_id,
            "name": self.name,
            "type": self.type,
        }
