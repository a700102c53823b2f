"""
Discrete-event engine: virtual clock and a time-ordered event queue.
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Any, Callable

from utils.errors import SchedulingError

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class Event:
    """A scheduled action. Fires in (fire_time, sequence) order."""

    fire_time: float
    sequence: int
    action: Callable[..., Any]
    args: tuple = ()
    label: str = ""
    cancelled: bool = False


class Simulator:
    """
    Single-threaded event loop.

    Events at equal times fire in insertion order. The clock never moves
    backwards; after run_until(t_end) it reads t_end.
    """

    def __init__(self, keep_trace: bool = False):
        self._now = 0.0
        self._sequence = 0
        self._heap: list[tuple[float, int, Event]] = []
        self.processed = 0
        self.trace: list[tuple[float, int, str]] | None = [] if keep_trace else None

    def now(self) -> float:
        """Current virtual time in seconds."""
        return self._now

    def schedule(self, t: float, action: Callable[..., Any], *args: Any, label: str = "") -> Event:
        """
        Schedule action(*args) at absolute time t.

        Returns:
            The event, usable as a handle for cancel()

        Raises:
            SchedulingError: If t is before the current time
        """
        if t < self._now:
            raise SchedulingError(f"cannot schedule at t={t} before now={self._now}")
        event = Event(t, self._sequence, action, args, label or getattr(action, "__name__", ""))
        self._sequence += 1
        heapq.heappush(self._heap, (t, event.sequence, event))
        return event

    def schedule_in(self, delay: float, action: Callable[..., Any], *args: Any, label: str = "") -> Event:
        """Schedule action(*args) delay seconds from now."""
        return self.schedule(self._now + delay, action, *args, label=label)

    @staticmethod
    def cancel(event: Event | None) -> None:
        if event is not None:
            event.cancelled = True

    def pending(self) -> int:
        """Number of queued events that have not been cancelled."""
        return sum(1 for _, _, e in self._heap if not e.cancelled)

    def run_until(self, t_end: float) -> int:
        """
        Process every event with fire_time <= t_end.

        Returns:
            Number of events processed in this call
        """
        if t_end < self._now:
            raise SchedulingError(f"run_until({t_end}) is before now={self._now}")
        count = 0
        heap = self._heap
        while heap and heap[0][0] <= t_end:
            event = heapq.heappop(heap)[2]
            if event.cancelled:
                continue
            self._now = event.fire_time
            if self.trace is not None:
                self.trace.append((event.fire_time, event.sequence, event.label))
            event.action(*event.args)
            count += 1
        self._now = t_end
        self.processed += count
        logger.debug(f"run_until({t_end}) processed {count} events")
        return count
