"""
Per-(next hop, link) interface queues with per-packet timestamps.
"""

from collections import deque
from typing import Iterator

from net.types import Link, Packet
from utils.errors import QueueOverflowError


class NextHopQueue:
    """
    FIFO of packets waiting for one next hop over one link.

    The queue is also the node's interface queue for that link: it holds
    at most `capacity` packets and tail-drops beyond that.
    """

    def __init__(self, owner: int, next_hop: int, link: Link, capacity: int = 50):
        if capacity < 1:
            raise ValueError("queue capacity must be positive")
        self.owner = owner
        self.next_hop = next_hop
        self.link = link
        self.capacity = capacity
        self._packets: deque[Packet] = deque()
        self.total_bytes = 0

    @property
    def key(self) -> tuple[int, int]:
        """Queue identifier: (next hop id, channel)."""
        return (self.next_hop, self.link.channel)

    def __len__(self) -> int:
        return len(self._packets)

    def __bool__(self) -> bool:
        return bool(self._packets)

    def __iter__(self) -> Iterator[Packet]:
        return iter(self._packets)

    def __repr__(self) -> str:
        return f"NextHopQueue(owner={self.owner}, key={self.key}, len={len(self)})"

    def is_full(self) -> bool:
        return len(self._packets) >= self.capacity

    def push(self, packet: Packet, now: float) -> None:
        """
        Stamp the packet with the current time and append it.

        Raises:
            QueueOverflowError: If the queue is at capacity
        """
        if self.is_full():
            raise QueueOverflowError(f"queue {self.key} at node {self.owner} is full")
        packet.enqueue_timestamp = now
        self._packets.append(packet)
        self.total_bytes += packet.size_bytes

    def head(self) -> Packet | None:
        return self._packets[0] if self._packets else None

    def pop(self) -> Packet:
        packet = self._packets.popleft()
        self.total_bytes -= packet.size_bytes
        return packet

    def drain(self) -> list[Packet]:
        """Remove and return every queued packet in order."""
        packets = list(self._packets)
        self._packets.clear()
        self.total_bytes = 0
        return packets

    def mean_age(self, now: float) -> float:
        if not self._packets:
            return 0.0
        return now - sum(p.enqueue_timestamp for p in self._packets) / len(self._packets)


InterfaceQueue = NextHopQueue
