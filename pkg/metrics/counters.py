"""
Delivery counters and the per-bin time series.
"""

import math
from dataclasses import asdict, dataclass, field


@dataclass
class Counters:
    """Packet accounting for one flow or for the whole run."""

    sent: int = 0
    received: int = 0
    duplicates: int = 0
    dropped_queue: int = 0
    dropped_noroute: int = 0
    dropped_hopbudget: int = 0
    dropped_linkloss: int = 0
    in_flight: int = 0
    bytes_delivered: int = 0
    control_bytes_sent: int = 0

    @property
    def dropped(self) -> int:
        return self.dropped_queue + self.dropped_noroute + self.dropped_hopbudget + self.dropped_linkloss

    def add(self, other: "Counters") -> None:
        for name, value in asdict(other).items():
            setattr(self, name, getattr(self, name) + value)

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass
class TimeSeries:
    """Delivered bytes and packets per fixed-width time bin."""

    bin_width: float = 1.0
    duration: float = 0.0
    delivered_bytes: list[int] = field(default_factory=list)
    delivered_packets: list[int] = field(default_factory=list)
    sent_packets: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.bin_width <= 0:
            raise ValueError("bin width must be positive")
        bins = max(math.ceil(self.duration / self.bin_width - 1e-9), 1)
        if not self.delivered_bytes:
            self.delivered_bytes = [0] * bins
            self.delivered_packets = [0] * bins
            self.sent_packets = [0] * bins

    def __len__(self) -> int:
        return len(self.delivered_bytes)

    def index(self, t: float) -> int:
        return min(max(int(t / self.bin_width), 0), len(self) - 1)

    def bin_start(self, i: int) -> float:
        return i * self.bin_width

    def record_delivery(self, t: float, size_bytes: int) -> None:
        i = self.index(t)
        self.delivered_bytes[i] += size_bytes
        self.delivered_packets[i] += 1

    def record_sent(self, t: float) -> None:
        self.sent_packets[self.index(t)] += 1

    def cumulative_pdr(self) -> list[float | None]:
        """Received over sent up to the end of each bin."""
        values: list[float | None] = []
        sent = received = 0
        for sent_here, received_here in zip(self.sent_packets, self.delivered_packets):
            sent += sent_here
            received += received_here
            values.append(received / sent if sent else None)
        return values
