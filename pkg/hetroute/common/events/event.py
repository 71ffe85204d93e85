from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field

from hetroute.common.models.default_id import EventId, default_id
from hetroute.common.models.run_context import RunContext


class EventType(Enum):
    EPISODE_INVOKE = "EpisodeInvoke"
    EPISODE_RESPOND = "EpisodeRespond"
    EPISODE_FAILED = "EpisodeFailed"
    EXPERIMENT_INVOKE = "ExperimentInvoke"
    EXPERIMENT_RESPOND = "ExperimentRespond"
    EXPERIMENT_FAILED = "ExperimentFailed"


EVENT_CONTEXT = "event_context"


class Event(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    event_id: EventId = default_id
    run_context: RunContext
    event_type: EventType
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))

    def event_dict(self) -> Dict[str, Any]:
        # Flatten the run id into the root level
        return {
            "event_id": self.event_id,
            "run_id": self.run_context.run_id,
            "event_type": self.event_type.value,
            "timestamp": self.timestamp.isoformat(),
        }

    @classmethod
    def event_base(cls, event_dict: Dict[str, Any]) -> Tuple[str, EventType, datetime]:
        event_id = event_dict["event_id"]
        event_type = EventType(event_dict["event_type"])
        timestamp = datetime.fromisoformat(event_dict["timestamp"])

        return event_id, event_type, timestamp

    def to_dict(self) -> Dict[str, Any]:
        # Return a dictionary representation of the event
        raise NotImplementedError

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Event":
        # Return an event object from a dictionary
        raise NotImplementedError
