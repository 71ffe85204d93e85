from typing import Any, Dict, List, Optional, Tuple

from hetroute.common.events.episode_events.episode_event import EpisodeEvent
from hetroute.common.events.event import EventType


class EpisodeRespondEvent(EpisodeEvent):
    """A finished episode; undelivered episodes are still a response."""

    event_type: EventType = EventType.EPISODE_RESPOND
    route_nodes: List[int]
    route_resources: List[Tuple[int, int]]
    delivered: bool
    rate: float
    failure_reason: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.episode_event_dict(),
            "data": {
                "route_nodes": self.route_nodes,
                "route_resources": [list(resource) for resource in self.route_resources],
                "delivered": self.delivered,
                "rate": self.rate,
                "failure_reason": self.failure_reason,
            },
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EpisodeRespondEvent":
        base_event = cls.episode_event_base(data)
        payload = data["data"]
        return cls(
            **base_event.model_dump(),
            route_nodes=payload["route_nodes"],
            route_resources=[tuple(resource) for resource in payload["route_resources"]],
            delivered=payload["delivered"],
            rate=payload["rate"],
            failure_reason=payload["failure_reason"],
        )
