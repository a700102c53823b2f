"""
Delivery ratio, packet loss and throughput.
"""

from dataclasses import dataclass

from metrics.counters import Counters, TimeSeries
from utils.errors import InvariantViolation


@dataclass(frozen=True)
class LossSummary:
    """Lost packets as a count and as a share of sent packets."""

    count: int
    ratio: float | None
    dropped: int
    in_flight: int


@dataclass(frozen=True)
class ThroughputSummary:
    average_bps: float
    per_bin_bps: list[float]


def pdr(c: Counters) -> float | None:
    """Received over sent; None (not applicable) when nothing was sent."""
    if c.sent == 0:
        return None
    return c.received / c.sent


def packet_loss(c: Counters) -> LossSummary:
    count = c.sent - c.received
    return LossSummary(
        count=count,
        ratio=count / c.sent if c.sent else None,
        dropped=c.dropped,
        in_flight=c.in_flight,
    )


def check_conservation(c: Counters, label: str = "total") -> None:
    """
    sent = received + drops + in flight, with no negative counter.

    Raises:
        InvariantViolation: If the identity does not hold
    """
    negative = [name for name, value in c.to_dict().items() if value < 0]
    if negative:
        raise InvariantViolation(f"{label}: negative counters {negative}")
    if c.sent != c.received + c.dropped + c.in_flight:
        raise InvariantViolation(
            f"{label}: sent {c.sent} != received {c.received} + dropped {c.dropped} + in flight {c.in_flight}"
        )


def throughput(c: Counters, duration: float, series: TimeSeries) -> ThroughputSummary:
    """Delivered payload bits per second, on average and per bin."""
    if duration <= 0:
        raise ValueError("duration must be positive")
    return ThroughputSummary(
        average_bps=c.bytes_delivered * 8 / duration,
        per_bin_bps=[b * 8 / series.bin_width for b in series.delivered_bytes],
    )
