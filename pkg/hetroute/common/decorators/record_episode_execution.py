"""Decorator for recording routing episode events and tracing."""

import functools

from openinference.semconv.trace import OpenInferenceSpanKindValues, SpanAttributes

from hetroute.common.containers.container import container
from hetroute.common.events.episode_events.episode_event import (
    DESTINATION,
    POLICY_ID,
    POLICY_NAME,
    POLICY_TYPE,
    SOURCE,
)
from hetroute.common.events.episode_events.episode_failed_event import (
    EpisodeFailedEvent,
)
from hetroute.common.events.episode_events.episode_invoke_event import (
    EpisodeInvokeEvent,
)
from hetroute.common.events.episode_events.episode_respond_event import (
    EpisodeRespondEvent,
)
from hetroute.common.instrumentations.tracing import tracer


def record_episode_execution(func):
    """Decorator to record episode events and tracing around `run_episode`."""

    @functools.wraps(func)
    def wrapper(topo, policy, *args, **kwargs):
        run_context = (
            kwargs.get("run_context")
            or (args[1] if len(args) > 1 else None)
            or container.run_context
        )
        policy_name: str = getattr(policy, "name", None) or getattr(
            policy, "__name__", type(policy).__name__
        )
        policy_type: str = getattr(policy, "type", None) or "callable"
        policy_id: str = getattr(policy, "policy_id", None) or policy_name
        oi_span_type: OpenInferenceSpanKindValues = getattr(
            policy, "oi_span_type", OpenInferenceSpanKindValues.AGENT
        )

        episode_event_base = {
            POLICY_ID: policy_id,
            POLICY_NAME: policy_name,
            POLICY_TYPE: policy_type,
            SOURCE: topo.source,
            DESTINATION: topo.destination,
            "run_context": run_context,
        }

        max_hops = args[0] if args else kwargs.get("max_hops")

        if container.event_store:
            invoke_event = EpisodeInvokeEvent(
                **episode_event_base,
                active_nodes=list(topo.active_nodes),
                max_hops=max_hops or len(topo.active_nodes),
            )
            container.event_store.record_event(invoke_event)

        try:
            with tracer.start_as_current_span(f"{policy_name}.run_episode") as span:
                span.set_attribute(POLICY_ID, policy_id)
                span.set_attribute(POLICY_NAME, policy_name)
                span.set_attribute(POLICY_TYPE, policy_type)
                span.set_attribute(SOURCE, topo.source)
                span.set_attribute(DESTINATION, topo.destination)
                span.set_attributes(run_context.model_dump())
                span.set_attribute(
                    SpanAttributes.OPENINFERENCE_SPAN_KIND,
                    oi_span_type.value,
                )

                result = func(topo, policy, *args, **kwargs)

                span.set_attribute("delivered", result.delivered)
                span.set_attribute("rate", result.rate)
                span.set_attribute("route", list(result.visited))
        except Exception as e:
            if container.event_store:
                failed_event = EpisodeFailedEvent(
                    **episode_event_base,
                    error=str(e),
                )
                container.event_store.record_event(failed_event)
            raise
        else:
            if container.event_store:
                respond_event = EpisodeRespondEvent(
                    **episode_event_base,
                    route_nodes=list(result.visited),
                    route_resources=[
                        (resource.technology_id, resource.subband_index)
                        for resource in result.resources
                    ],
                    delivered=result.delivered,
                    rate=result.rate,
                    failure_reason=result.failure_reason,
                )
                container.event_store.record_event(respond_event)

        return result

    return wrapper
