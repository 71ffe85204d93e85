from typing import Any, Dict, List

from hetroute.common.events.episode_events.episode_event import EpisodeEvent
from hetroute.common.events.event import EventType


class EpisodeInvokeEvent(EpisodeEvent):
    event_type: EventType = EventType.EPISODE_INVOKE
    active_nodes: List[int]
    max_hops: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.episode_event_dict(),
            "data": {
                "active_nodes": self.active_nodes,
                "max_hops": self.max_hops,
            },
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EpisodeInvokeEvent":
        base_event = cls.episode_event_base(data)
        return cls(
            **base_event.model_dump(),
            active_nodes=data["data"]["active_nodes"],
            max_hops=data["data"]["max_hops"],
        )
