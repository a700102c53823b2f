"""
Run-time metrics collection with unique-id accounting.
"""

import logging
from collections import Counter as Tally
from dataclasses import dataclass, field

from metrics.counters import Counters, TimeSeries
from net.types import Packet
from utils.errors import DropReason, InvariantViolation

logger = logging.getLogger(__name__)

DROP_FIELDS = {
    DropReason.QUEUE: "dropped_queue",
    DropReason.NOROUTE: "dropped_noroute",
    DropReason.HOPBUDGET: "dropped_hopbudget",
    DropReason.LINKLOSS: "dropped_linkloss",
}


@dataclass
class RunTotals:
    """Finalized counters of a run."""

    per_flow: dict[int, Counters]
    total: Counters
    series: TimeSeries
    acks_sent: int = 0
    acks_delivered: int = 0
    acks_dropped: int = 0
    routing_errors: int = 0
    drop_events: dict[str, int] = field(default_factory=dict)


class MetricsCollector:
    """
    Tracks every data packet id from generation to its outcome.

    Retransmitted copies share an id. An id counts as received once any
    copy arrives; otherwise it is in flight while a copy is still in the
    network, and dropped (by the reason of its last copy) when none is.
    """

    def __init__(self, flow_ids: list[int], duration: float, bin_width: float = 1.0):
        self.duration = duration
        self.series = TimeSeries(bin_width=bin_width, duration=duration)
        self._flows = {fid: Counters() for fid in flow_ids}
        self._flow_of: dict[int, int] = {}
        self._live: dict[int, int] = {}
        self._delivered: set[int] = set()
        self._last_drop: dict[int, DropReason] = {}
        self._drop_events: Tally = Tally()
        self.acks_sent = 0
        self.acks_delivered = 0
        self.acks_dropped = 0
        self.routing_errors = 0

    def on_generated(self, packet: Packet, now: float) -> None:
        """A source created a new data packet id."""
        if packet.id in self._flow_of:
            raise InvariantViolation(f"packet id {packet.id} generated twice")
        self._flow_of[packet.id] = packet.flow_id
        self._live[packet.id] = 1
        self._flows[packet.flow_id].sent += 1
        self.series.record_sent(now)

    def on_copy(self, packet: Packet) -> None:
        """A retransmitted copy of an existing id entered the network."""
        self._live[packet.id] += 1

    def on_ack_sent(self) -> None:
        self.acks_sent += 1

    def on_delivered(self, packet: Packet, now: float) -> bool:
        """
        A copy reached its destination.

        Returns:
            True for the first copy of this id
        """
        if not packet.is_data:
            self.acks_delivered += 1
            return True
        self._live[packet.id] -= 1
        counters = self._flows[packet.flow_id]
        if packet.id in self._delivered:
            counters.duplicates += 1
            return False
        self._delivered.add(packet.id)
        counters.received += 1
        counters.bytes_delivered += packet.size_bytes
        self.series.record_delivery(now, packet.size_bytes)
        return True

    def on_dropped(self, packet: Packet, reason: DropReason) -> None:
        self._drop_events[reason.value] += 1
        if not packet.is_data:
            self.acks_dropped += 1
            return
        self._live[packet.id] -= 1
        self._last_drop[packet.id] = reason

    def on_misrouted(self, packet: Packet) -> None:
        self.routing_errors += 1
        logger.warning(f"packet {packet.id} for node {packet.dst} reached the wrong sink")

    def live_copies(self) -> int:
        return sum(self._live.values())

    def finalize(self, control_bytes_sent: int = 0) -> RunTotals:
        for pid, flow_id in self._flow_of.items():
            if pid in self._delivered:
                continue
            counters = self._flows[flow_id]
            live = self._live[pid]
            if live < 0:
                raise InvariantViolation(f"packet {pid} has {live} live copies")
            if live > 0:
                counters.in_flight += 1
            else:
                name = DROP_FIELDS[self._last_drop[pid]]
                setattr(counters, name, getattr(counters, name) + 1)
        total = Counters(control_bytes_sent=control_bytes_sent)
        for counters in self._flows.values():
            total.add(counters)
        return RunTotals(
            per_flow=dict(sorted(self._flows.items())),
            total=total,
            series=self.series,
            acks_sent=self.acks_sent,
            acks_delivered=self.acks_delivered,
            acks_dropped=self.acks_dropped,
            routing_errors=self.routing_errors,
            drop_events=dict(sorted(self._drop_events.items())),
        )
