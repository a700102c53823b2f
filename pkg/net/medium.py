"""
Abstract shared medium: one FIFO-granted, collision-free medium per channel.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable

from net.types import Link
from sim.engine import Simulator
from sim.streams import RandomStream

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class Transmission:
    """A frame handed to the medium by a sender."""

    link: Link
    sender: int
    frame_bytes: int
    payload: Any = None
    on_delivered: Callable[["Transmission"], None] | None = None
    on_lost: Callable[["Transmission"], None] | None = None
    on_finished: Callable[["Transmission"], None] | None = None
    start: float = 0.0
    end: float = 0.0

    @property
    def receiver(self) -> int:
        return self.link.other(self.sender)


GrantCallback = Callable[[], Transmission | None]


class ChannelMedium:
    """
    One channel shared network-wide.

    At most one frame is in the air at a time; waiting senders are granted
    in request order. A grant callback builds its frame at grant time and
    may return None when it no longer has anything to send.
    """

    def __init__(self, channel: int, owner: "Medium"):
        self.channel = channel
        self.busy_until = 0.0
        self._owner = owner
        self._waiting: deque[GrantCallback] = deque()
        self._busy = False
        self._end_label = f"tx-end-ch{channel}"

    def request(self, on_grant: GrantCallback) -> None:
        self._waiting.append(on_grant)
        self._grant_next()

    def _grant_next(self) -> None:
        while self._waiting and not self._busy:
            transmission = self._waiting.popleft()()
            if transmission is None:
                continue
            self._start(transmission)

    def _start(self, transmission: Transmission) -> None:
        sim = self._owner.sim
        transmission.start = sim.now()
        transmission.end = transmission.start + self._owner.airtime(transmission.link, transmission.frame_bytes)
        self._busy = True
        self.busy_until = transmission.end
        sim.schedule(transmission.end, self._complete, transmission, label=self._end_label)

    def _complete(self, transmission: Transmission) -> None:
        self._busy = False
        self._owner.finish(transmission)
        self._grant_next()


class Medium:
    """All channel media of one run, plus frame accounting and loss draws."""

    def __init__(
        self,
        sim: Simulator,
        loss_stream: RandomStream,
        frame_overhead_s: float = 0.0,
        record: bool = False,
    ):
        self.sim = sim
        self.frame_overhead_s = frame_overhead_s
        self._loss = loss_stream
        self._channels: dict[int, ChannelMedium] = {}
        self.frames_sent = 0
        self.frame_bytes_sent = 0
        self.frames_lost = 0
        self.log: list[Transmission] | None = [] if record else None

    def channel(self, channel: int) -> ChannelMedium:
        if channel not in self._channels:
            self._channels[channel] = ChannelMedium(channel, self)
        return self._channels[channel]

    def airtime(self, link: Link, frame_bytes: int) -> float:
        """Serialization delay of a frame on a link (propagation delay is zero)."""
        return frame_bytes * 8 / link.rate_bps + self.frame_overhead_s

    def request(self, channel: int, on_grant: GrantCallback) -> None:
        self.channel(channel).request(on_grant)

    def transmit_frame(
        self,
        link: Link,
        frame_bytes: int,
        at: float,
        sender: int | None = None,
        payload: Any = None,
        on_delivered: Callable[[Transmission], None] | None = None,
        on_lost: Callable[[Transmission], None] | None = None,
    ) -> Transmission:
        """
        Queue a fixed frame for transmission at time `at` or later.

        The frame starts when the channel grants it, occupies the channel
        for frame_bytes * 8 / rate_bps seconds and is then delivered to the
        far endpoint unless the link's loss draw fails.
        """
        if frame_bytes <= 0:
            raise ValueError("frame must carry at least one byte")
        transmission = Transmission(
            link=link,
            sender=link.a if sender is None else sender,
            frame_bytes=frame_bytes,
            payload=payload,
            on_delivered=on_delivered,
            on_lost=on_lost,
        )
        grant = lambda: transmission
        if at > self.sim.now():
            self.sim.schedule(at, self.request, link.channel, grant, label="tx-request")
        else:
            self.request(link.channel, grant)
        return transmission

    def finish(self, transmission: Transmission) -> None:
        self.frames_sent += 1
        self.frame_bytes_sent += transmission.frame_bytes
        if self.log is not None:
            self.log.append(transmission)
        link = transmission.link
        lost = link.loss_prob > 0 and self._loss.random() < link.loss_prob
        if lost:
            self.frames_lost += 1
            if transmission.on_lost:
                transmission.on_lost(transmission)
        elif transmission.on_delivered:
            transmission.on_delivered(transmission)
        if transmission.on_finished:
            transmission.on_finished(transmission)
