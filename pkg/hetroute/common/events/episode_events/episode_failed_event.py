from typing import Any, Dict

from hetroute.common.events.episode_events.episode_event import EpisodeEvent
from hetroute.common.events.event import EventType


class EpisodeFailedEvent(EpisodeEvent):
    """An episode aborted by an exception (policy bug, constraint violation)."""

    event_type: EventType = EventType.EPISODE_FAILED
    error: Any

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.episode_event_dict(),
            "data": {
                "error": self.error,
            },
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EpisodeFailedEvent":
        base_event = cls.episode_event_base(data)
        return cls(
            **base_event.model_dump(),
            error=data["data"]["error"],
        )
