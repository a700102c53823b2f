"""
Transmission units and the spare-space rule that governs aggregation.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from net.queues import NextHopQueue
from net.types import Link, Packet


class QueuePriority(str, Enum):
    OLDEST_HEAD = "oldest_head"
    AVG_AGE = "avg_age"


@dataclass
class Aal2rConfig:
    """Frame geometry and queue service policy."""

    mtu_bytes: int = 1500
    header_bytes: int = 28
    queue_priority: QueuePriority = QueuePriority.OLDEST_HEAD
    hold_time_s: float = 0.0

    def __post_init__(self):
        self.queue_priority = QueuePriority(self.queue_priority)
        if not 0 <= self.header_bytes < self.mtu_bytes:
            raise ValueError(f"header_bytes must be below mtu_bytes ({self.header_bytes} >= {self.mtu_bytes})")
        if self.hold_time_s < 0:
            raise ValueError("hold_time_s must be non-negative")

    @property
    def max_payload_bytes(self) -> int:
        return self.mtu_bytes - self.header_bytes


@dataclass(slots=True)
class TransmissionUnit:
    """One frame: a header followed by packets in queue order."""

    header_bytes: int
    packets: list[Packet] = field(default_factory=list)
    link: Link | None = None

    @property
    def payload_bytes(self) -> int:
        return sum(p.size_bytes for p in self.packets)

    @property
    def total_bytes(self) -> int:
        return self.header_bytes + self.payload_bytes

    def __len__(self) -> int:
        return len(self.packets)


def spare_space(q: NextHopQueue | Iterable[Packet], cfg: Aal2rConfig) -> int:
    """
    SP = MTU - sum of queued packet sizes - header size.

    A negative value means no further packet fits in the unit being built.
    """
    queued = q.total_bytes if isinstance(q, NextHopQueue) else sum(p.size_bytes for p in q)
    return cfg.mtu_bytes - queued - cfg.header_bytes


def unit_is_full(q: NextHopQueue, cfg: Aal2rConfig) -> bool:
    """True when not even the smallest waiting packet would still fit."""
    if not q:
        return False
    return spare_space(q, cfg) < min(p.size_bytes for p in q)


def assemble_unit(q: NextHopQueue, cfg: Aal2rConfig) -> TransmissionUnit:
    """
    Dequeue the longest head prefix whose frame stays within the MTU.

    Raises:
        ValueError: If the queue is empty
    """
    if not q:
        raise ValueError(f"cannot assemble a unit from empty queue {q.key}")
    unit = TransmissionUnit(header_bytes=cfg.header_bytes, link=q.link)
    accumulated = 0
    while q:
        size = q.head().size_bytes
        if unit.packets and cfg.header_bytes + accumulated + size > cfg.mtu_bytes:
            break
        unit.packets.append(q.pop())
        accumulated += size
    return unit


def deaggregate(unit: TransmissionUnit) -> list[Packet]:
    """Packets of a unit in transmission order."""
    return list(unit.packets)
