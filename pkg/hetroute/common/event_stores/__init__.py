from .event_store import EventStore
from .event_store_in_memory import EventStoreInMemory

__all__ = [
    "EventStoreInMemory",
    "EventStore",
]
