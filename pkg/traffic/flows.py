"""
Flow descriptions and constant-bit-rate injection times.
"""

import math
from dataclasses import dataclass
from enum import Enum


class FlowKind(str, Enum):
    CBR = "cbr"
    RELIABLE = "reliable"


@dataclass(frozen=True)
class FlowSpec:
    """One traffic flow between two nodes."""

    flow_id: int
    src: int
    dst: int
    kind: FlowKind = FlowKind.CBR
    rate_pps: float = 100.0
    pkt_bytes: int = 512
    start_s: float = 1.0
    stop_s: float = 60.0
    window: int = 8
    rto_initial_s: float = 1.0
    jitter_s: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", FlowKind(self.kind))
        if self.rate_pps <= 0:
            raise ValueError("rate_pps must be positive")
        if self.window < 1:
            raise ValueError("window must be at least 1")


def injection_count(flow: FlowSpec) -> int:
    """ceil((stop - start) * rate) over the half-open interval [start, stop)."""
    span = flow.stop_s - flow.start_s
    if span <= 0:
        return 0
    return max(math.ceil(span * flow.rate_pps - 1e-9), 0)


def cbr_schedule(flow: FlowSpec) -> list[float]:
    """Injection instants start, start + 1/rate, ... strictly before stop."""
    return [flow.start_s + k / flow.rate_pps for k in range(injection_count(flow))]
