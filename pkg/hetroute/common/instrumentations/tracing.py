import os
import socket

from loguru import logger
from openinference.semconv.resource import ResourceAttributes
from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor
from opentelemetry.sdk.trace.export.in_memory_span_exporter import InMemorySpanExporter
from opentelemetry.trace import Tracer

collector_host = os.getenv("OTEL_COLLECTOR_HOST", "localhost")
collector_port = int(os.getenv("OTEL_COLLECTOR_PORT", "4317"))
tracing_enabled = os.getenv("HETROUTE_TRACING", "1") != "0"


def is_local_endpoint_available(host: str, port: int) -> bool:
    """Check if the OTLP endpoint is available."""
    try:
        with socket.create_connection((host, port), timeout=0.5):
            return True
    except Exception as e:
        logger.debug(f"Endpoint check failed: {e}")
        return False


def setup_tracing() -> "Tracer":
    if tracing_enabled and is_local_endpoint_available(collector_host, collector_port):
        resource = Resource.create({ResourceAttributes.PROJECT_NAME: "hetroute-trace"})
        tracer_provider = TracerProvider(resource=resource)

        endpoint = f"{collector_host}:{collector_port}"
        span_exporter = OTLPSpanExporter(endpoint=endpoint, insecure=True)
        logger.info(f"OTLP endpoint {endpoint} is available. Using OTLPSpanExporter.")

        # Episodes are short and numerous, so spans are batched
        tracer_provider.add_span_processor(BatchSpanProcessor(span_exporter))
        trace.set_tracer_provider(tracer_provider)
    else:
        # Fallback to InMemorySpanExporter if the endpoint is not available
        span_exporter = InMemorySpanExporter()
        span_exporter.shutdown()
        logger.debug("OTLP endpoint is not available. Using InMemorySpanExporter.")

    return trace.get_tracer(__name__)


tracer = setup_tracing()
