from typing import Any, Dict

from hetroute.common.events.event import EVENT_CONTEXT, Event
from hetroute.common.models.run_context import RunContext

EXPERIMENT_NAME = "experiment_name"
EXPERIMENT_MODE = "experiment_mode"


class ExperimentEvent(Event):
    experiment_name: str
    experiment_mode: str

    def experiment_event_dict(self) -> Dict[str, Any]:
        event_context = {
            EXPERIMENT_NAME: self.experiment_name,
            EXPERIMENT_MODE: self.experiment_mode,
            "run_context": self.run_context.model_dump(),
        }
        return {
            **self.event_dict(),
            EVENT_CONTEXT: event_context,
        }

    @classmethod
    def experiment_event_base(
        cls, experiment_event_dict: Dict[str, Any]
    ) -> "ExperimentEvent":
        context = experiment_event_dict[EVENT_CONTEXT]
        event_base = cls.event_base(experiment_event_dict)
        return ExperimentEvent(
            event_id=event_base[0],
            event_type=event_base[1],
            timestamp=event_base[2],
            experiment_name=context[EXPERIMENT_NAME],
            experiment_mode=context[EXPERIMENT_MODE],
            run_context=RunContext.model_validate(context["run_context"]),
        )
