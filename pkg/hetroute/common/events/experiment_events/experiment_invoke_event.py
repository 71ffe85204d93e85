from typing import Any, Dict

from hetroute.common.events.event import EventType
from hetroute.common.events.experiment_events.experiment_event import ExperimentEvent


class ExperimentInvokeEvent(ExperimentEvent):
    event_type: EventType = EventType.EXPERIMENT_INVOKE
    config: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.experiment_event_dict(),
            "data": {"config": self.config},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentInvokeEvent":
        base_event = cls.experiment_event_base(data)
        return cls(**base_event.model_dump(), config=data["data"]["config"])
