from typing import Optional, Type

from hetroute.common.event_stores.event_store import EventStore
from hetroute.common.event_stores.event_store_in_memory import EventStoreInMemory
from hetroute.common.models.run_context import RunContext


class Container:
    _instance = None
    _event_store: Optional[EventStore] = None
    _event_store_class: Type[EventStore] = EventStoreInMemory
    _run_context: Optional[RunContext] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._event_store = cls._event_store_class()
            cls._instance._run_context = RunContext.default()
        return cls._instance

    @classmethod
    def register_event_store(
        cls, event_store_class: Type[EventStore], event_store: EventStore
    ) -> None:
        """Register a different EventStore implementation"""
        cls._event_store_class = event_store_class
        cls._instance._event_store = event_store

    @classmethod
    def register_run_context(cls, run_context: RunContext) -> None:
        """Set the context that events recorded from now on belong to"""
        cls._instance._run_context = run_context

    @property
    def event_store(self) -> EventStore:
        return self._event_store

    @property
    def run_context(self) -> RunContext:
        return self._run_context


container = Container()
