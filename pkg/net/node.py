"""
Per-node runtime state: radios, next-hop queues and pending control frames.
"""

from collections import deque
from dataclasses import dataclass, field

from net.queues import NextHopQueue
from net.types import Link, NodeSpec, RadioSpec
from sim.engine import Event


@dataclass
class Radio:
    """One interface; serves the queues whose link uses its channel."""

    node_id: int
    spec: RadioSpec
    idle: bool = True
    requested: bool = False
    timer: Event | None = None

    @property
    def channel(self) -> int:
        return self.spec.channel


@dataclass
class ControlFrame:
    link: Link
    message: object
    size_bytes: int


class MeshNode:
    """A node in a running simulation."""

    def __init__(self, spec: NodeSpec, queue_capacity: int = 50):
        self.id = spec.id
        self.spec = spec
        self.queue_capacity = queue_capacity
        self.radios: dict[int, Radio] = {r.channel: Radio(spec.id, r) for r in spec.radios}
        self.queues: dict[tuple[int, int], NextHopQueue] = {}
        self.control: dict[int, deque[ControlFrame]] = {ch: deque() for ch in self.radios}
        self._by_channel: dict[int, list[NextHopQueue]] = {ch: [] for ch in self.radios}

    def __repr__(self) -> str:
        return f"MeshNode(id={self.id}, queues={len(self.queues)})"

    def queue_for(self, link: Link) -> NextHopQueue:
        """The queue towards the far end of `link`, created on first use."""
        next_hop = link.other(self.id)
        key = (next_hop, link.channel)
        queue = self.queues.get(key)
        if queue is None:
            queue = NextHopQueue(self.id, next_hop, link, self.queue_capacity)
            self.queues[key] = queue
            channel_queues = self._by_channel[link.channel]
            channel_queues.append(queue)
            channel_queues.sort(key=lambda q: q.key)
        return queue

    def queues_on(self, channel: int) -> list[NextHopQueue]:
        return self._by_channel.get(channel, [])

    def queued_data_packets(self) -> int:
        return sum(1 for q in self.queues.values() for p in q if p.is_data)
