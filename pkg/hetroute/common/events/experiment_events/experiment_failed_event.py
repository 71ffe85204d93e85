from typing import Any, Dict

from hetroute.common.events.event import EventType
from hetroute.common.events.experiment_events.experiment_event import ExperimentEvent


class ExperimentFailedEvent(ExperimentEvent):
    event_type: EventType = EventType.EXPERIMENT_FAILED
    error: Any

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.experiment_event_dict(),
            "data": {"error": self.error},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentFailedEvent":
        base_event = cls.experiment_event_base(data)
        return cls(**base_event.model_dump(), error=data["data"]["error"])
