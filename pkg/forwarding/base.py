"""
Base class for forwarding strategies.
"""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

from forwarding.aggregation import TransmissionUnit
from net.queues import NextHopQueue
from net.types import Packet

if TYPE_CHECKING:
    from net.network import MeshNetwork
    from net.node import MeshNode, Radio


class ForwardingStrategy(ABC):
    """
    A forwarding protocol plugged into the mesh runtime.

    The runtime owns queues, radios and the medium; a strategy decides
    which queue a packet joins and what frame a granted radio sends.
    """

    def __init__(self):
        self.network: "MeshNetwork | None" = None

    @property
    @abstractmethod
    def name(self) -> str:
        """Protocol name used in scenarios and reports."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    def attach(self, network: "MeshNetwork") -> None:
        """Bind to a network before the run starts."""
        self.network = network

    def start(self) -> None:
        """Schedule protocol timers. Called once at t = 0."""
        pass

    @abstractmethod
    def route(self, node: "MeshNode", packet: Packet) -> NextHopQueue:
        """
        Enqueue a packet that is not addressed to this node.

        Returns:
            The queue the packet joined

        Raises:
            PacketDropped: When the packet cannot be forwarded
        """
        pass

    @abstractmethod
    def poll(self, node: "MeshNode", radio: "Radio", now: float) -> tuple[bool, float | None]:
        """
        Whether the radio has a frame to send now.

        Returns:
            Tuple of (ready, time to check again when not ready)
        """
        pass

    @abstractmethod
    def next_unit(self, node: "MeshNode", radio: "Radio", now: float) -> TransmissionUnit | None:
        """Build the frame for a radio that was just granted the channel."""
        pass

    def on_control(self, node: "MeshNode", message: object) -> None:
        """A control message reached `node`."""
        pass

    def on_topology_change(self, affected: set[int]) -> None:
        """Links of the given nodes changed state."""
        pass

    def stats(self) -> dict[str, float]:
        return {}
