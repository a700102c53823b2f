"""
Destination-side delivery accounting.
"""

from enum import Enum

from metrics.collector import MetricsCollector
from net.types import Packet


class SinkOutcome(str, Enum):
    DELIVERED = "delivered"
    DUPLICATE = "duplicate"
    MISROUTED = "misrouted"


def sink_receive(packet: Packet, node_id: int, metrics: MetricsCollector, now: float) -> SinkOutcome:
    """Count a packet arriving at node_id exactly once per unique id."""
    if packet.dst != node_id:
        metrics.on_misrouted(packet)
        return SinkOutcome.MISROUTED
    if metrics.on_delivered(packet, now):
        return SinkOutcome.DELIVERED
    return SinkOutcome.DUPLICATE
