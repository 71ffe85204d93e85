"""Decorator for recording experiment execution events and tracing."""

import functools
import json

from openinference.semconv.trace import OpenInferenceSpanKindValues, SpanAttributes
from pydantic_core import to_jsonable_python

from hetroute.common.containers.container import container
from hetroute.common.events.experiment_events.experiment_event import (
    EXPERIMENT_MODE,
    EXPERIMENT_NAME,
)
from hetroute.common.events.experiment_events.experiment_failed_event import (
    ExperimentFailedEvent,
)
from hetroute.common.events.experiment_events.experiment_invoke_event import (
    ExperimentInvokeEvent,
)
from hetroute.common.events.experiment_events.experiment_respond_event import (
    ExperimentRespondEvent,
)
from hetroute.common.instrumentations.tracing import tracer
from hetroute.common.models.run_context import RunContext


def record_experiment_execution(func):
    """Decorator to record experiment execution events and tracing."""

    @functools.wraps(func)
    def wrapper(self, *args, **kwargs):
        run_context: RunContext = (
            args[0] if args else kwargs.get("run_context", None)
        )
        config = args[1] if len(args) > 1 else kwargs.get("config", None)
        oi_span_type: OpenInferenceSpanKindValues = self.oi_span_type
        experiment_name: str = self.name
        experiment_mode: str = run_context.mode

        experiment_event_base = {
            EXPERIMENT_NAME: experiment_name,
            EXPERIMENT_MODE: experiment_mode,
            "run_context": run_context,
        }
        config_dict = config.model_dump(mode="json") if config is not None else {}

        if container.event_store:
            invoke_event = ExperimentInvokeEvent(
                **experiment_event_base,
                config=config_dict,
            )
            container.event_store.record_event(invoke_event)

        try:
            with tracer.start_as_current_span(f"{experiment_name}.execute") as span:
                span.set_attribute(EXPERIMENT_NAME, experiment_name)
                span.set_attribute(EXPERIMENT_MODE, experiment_mode)
                span.set_attributes(run_context.model_dump())
                span.set_attribute(
                    SpanAttributes.OPENINFERENCE_SPAN_KIND,
                    oi_span_type.value,
                )
                span.set_attribute("input", json.dumps(config_dict))

                result = func(self, *args, **kwargs)

                span.set_attribute(
                    "output", json.dumps(result.summary, default=to_jsonable_python)
                )
        except Exception as e:
            if container.event_store:
                failed_event = ExperimentFailedEvent(
                    **experiment_event_base,
                    error=str(e),
                )
                container.event_store.record_event(failed_event)
            raise
        else:
            if container.event_store:
                respond_event = ExperimentRespondEvent(
                    **experiment_event_base,
                    summary=json.loads(
                        json.dumps(result.summary, default=to_jsonable_python)
                    ),
                )
                container.event_store.record_event(respond_event)

        return result

    return wrapper
