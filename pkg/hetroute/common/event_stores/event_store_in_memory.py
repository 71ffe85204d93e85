"""Module for storing and managing events in memory."""

from collections import deque
from typing import Deque, List, Optional

from hetroute.common.event_stores.event_store import EventStore
from hetroute.common.events.event import Event, EventType


class EventStoreInMemory(EventStore):
    """Stores events in memory, keeping at most `capacity` of the newest."""

    events: Deque[Event]

    def __init__(self, capacity: Optional[int] = None):
        """Initialize the event store; `capacity=None` keeps everything."""
        self.capacity = capacity
        self.events = deque(maxlen=capacity)

    def record_event(self, event: Event) -> None:
        """Record an event to the store."""
        self.events.append(event)

    def record_events(self, events: List[Event]) -> None:
        """Record events to the store."""
        self.events.extend(events)

    def clear_events(self) -> None:
        """Clear all events."""
        self.events.clear()

    def get_events(self) -> List[Event]:
        """Get all events."""
        return list(self.events)

    def get_event(self, event_id: str) -> Optional[Event]:
        """Get an event by ID."""
        for event in self.events:
            if event.event_id == event_id:
                return event
        return None

    def get_run_events(self, run_id: str) -> List[Event]:
        """Get all events recorded under a given run ID."""
        return [event for event in self.events if event.run_context.run_id == run_id]

    def get_events_by_type(self, event_type: EventType) -> List[Event]:
        """Get all events of one type."""
        return [event for event in self.events if event.event_type == event_type]
