"""
Windowed reliable flow with cumulative acknowledgements.

Fixed window, no congestion control: timeouts retransmit the oldest
unacknowledged sequence number and back off the timer.
"""

from dataclasses import dataclass, field
from enum import Enum

RTO_MAX_S = 4.0
RTT_ALPHA = 0.125


class ReliableEvent(str, Enum):
    ACK = "ack"
    TIMEOUT = "timeout"
    WINDOW_SPACE = "window-space"


@dataclass
class ReliableState:
    """Sender state of one reliable flow."""

    window: int = 8
    rto: float = 1.0
    next_seq: int = 0
    available: int = 0
    highest_cumulative_ack: int = -1
    in_flight: dict[int, float] = field(default_factory=dict)
    retransmitted: set[int] = field(default_factory=set)
    srtt: float | None = None

    @property
    def done(self) -> bool:
        return not self.in_flight and self.next_seq >= self.available


def reliable_on_event(
    state: ReliableState,
    event: ReliableEvent,
    now: float,
    ack_seq: int | None = None,
) -> list[int]:
    """
    Advance the sender.

    Args:
        state: Sender state, updated in place
        event: ack, timeout or window-space (new application data)
        now: Current time
        ack_seq: Highest in-order sequence received, for ack events

    Returns:
        Sequence numbers to put on the wire, in order
    """
    sends: list[int] = []
    if event is ReliableEvent.ACK:
        if ack_seq is not None and ack_seq > state.highest_cumulative_ack:
            sample_sent = state.in_flight.get(ack_seq)
            covered = range(state.highest_cumulative_ack + 1, ack_seq + 1)
            if sample_sent is not None and state.retransmitted.isdisjoint(covered):
                _update_rtt(state, now - sample_sent)
            for seq in [s for s in state.in_flight if s <= ack_seq]:
                del state.in_flight[seq]
            state.highest_cumulative_ack = ack_seq
    elif event is ReliableEvent.TIMEOUT:
        if state.in_flight:
            oldest = min(state.in_flight)
            state.in_flight[oldest] = now
            state.retransmitted.add(oldest)
            state.rto = min(state.rto * 2, RTO_MAX_S)
            sends.append(oldest)
        return sends
    while len(state.in_flight) < state.window and state.next_seq < state.available:
        state.in_flight[state.next_seq] = now
        sends.append(state.next_seq)
        state.next_seq += 1
    return sends


def _update_rtt(state: ReliableState, sample: float) -> None:
    if state.srtt is None:
        state.srtt = sample
    else:
        state.srtt = (1 - RTT_ALPHA) * state.srtt + RTT_ALPHA * sample
    state.rto = min(2 * state.srtt, RTO_MAX_S)


@dataclass
class ReliableReceiver:
    """Receiver side: tracks the highest in-order sequence number."""

    expected: int = 0
    out_of_order: set[int] = field(default_factory=set)

    def receive(self, seq: int) -> int:
        """
        Register a sequence number.

        Returns:
            The cumulative acknowledgement to send back
        """
        if seq >= self.expected:
            self.out_of_order.add(seq)
            while self.expected in self.out_of_order:
                self.out_of_order.remove(self.expected)
                self.expected += 1
        return self.expected - 1
