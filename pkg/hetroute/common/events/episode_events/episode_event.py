from typing import Any, Dict

from hetroute.common.events.event import EVENT_CONTEXT, Event
from hetroute.common.models.default_id import default_id
from hetroute.common.models.run_context import RunContext

POLICY_ID = "policy_id"
POLICY_NAME = "policy_name"
POLICY_TYPE = "policy_type"
SOURCE = "source"
DESTINATION = "destination"


class EpisodeEvent(Event):
    policy_id: str = default_id
    policy_name: str
    policy_type: str
    source: int
    destination: int

    def episode_event_dict(self) -> Dict[str, Any]:
        event_context = {
            POLICY_ID: self.policy_id,
            POLICY_NAME: self.policy_name,
            POLICY_TYPE: self.policy_type,
            SOURCE: self.source,
            DESTINATION: self.destination,
            "run_context": self.run_context.model_dump(),
        }
        return {
            **self.event_dict(),
            EVENT_CONTEXT: event_context,
        }

    @classmethod
    def episode_event_base(cls, episode_event_dict: Dict[str, Any]) -> "EpisodeEvent":
        context = episode_event_dict[EVENT_CONTEXT]
        event_base = cls.event_base(episode_event_dict)
        return EpisodeEvent(
            event_id=event_base[0],
            event_type=event_base[1],
            timestamp=event_base[2],
            policy_id=context[POLICY_ID],
            policy_name=context[POLICY_NAME],
            policy_type=context[POLICY_TYPE],
            source=context[SOURCE],
            destination=context[DESTINATION],
            run_context=RunContext.model_validate(context["run_context"]),
        )
