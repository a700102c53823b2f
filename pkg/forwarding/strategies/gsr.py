"""
GSR forwarding: single-path next-hop lookup, one packet per frame,
periodic full-table exchange carried over the modelled channels.
"""

import logging

from forwarding.aal2r import select_queue_for_radio
from forwarding.aggregation import Aal2rConfig, TransmissionUnit
from forwarding.base import ForwardingStrategy
from net.node import ControlFrame, MeshNode, Radio
from net.queues import NextHopQueue
from net.types import Packet
from routing.gsr import (
    GsrConfig,
    GsrTables,
    RoutingUpdateMessage,
    gsr_forward,
    gsr_handle_update,
    gsr_init,
    gsr_periodic_update,
    gsr_set_neighbors,
)
from sim.streams import RandomStream

logger = logging.getLogger(__name__)


class GsrStrategy(ForwardingStrategy):
    """Global State Routing with packet forwarding only."""

    def __init__(
        self,
        config: GsrConfig | None = None,
        frame: Aal2rConfig | None = None,
        stream: RandomStream | None = None,
    ):
        super().__init__()
        self.config = config or GsrConfig()
        self.frame = frame or Aal2rConfig()
        self._stream = stream or RandomStream(0)
        self.tables: dict[int, GsrTables] = {}
        self.updates_sent = 0

    @property
    def name(self) -> str:
        return "gsr"

    @property
    def description(self) -> str:
        return "Global State Routing: link-state next-hop forwarding without aggregation"

    def attach(self, network) -> None:
        super().attach(network)
        topology = network.topology
        self.tables = {nid: gsr_init(nid, set(topology.neighbors(nid))) for nid in network.nodes}

    def start(self) -> None:
        sim = self.network.sim
        for nid in sorted(self.tables):
            offset = self.config.update_interval_s * self._stream.random()
            sim.schedule(sim.now() + offset, self._periodic, nid, label=f"gsr-update-{nid}")

    def _periodic(self, nid: int) -> None:
        network = self.network
        now = network.sim.now()
        tables = self.tables[nid]
        message = gsr_periodic_update(tables, now)
        for neighbor in sorted(tables.neighbor_list):
            links = network.topology.links_between(nid, neighbor)
            if not links:
                continue
            network.send_control(nid, ControlFrame(links[0], message, message.wire_size_bytes))
            self.updates_sent += 1
        network.sim.schedule_in(self.config.update_interval_s, self._periodic, nid, label=f"gsr-update-{nid}")

    def on_control(self, node: MeshNode, message: object) -> None:
        if isinstance(message, RoutingUpdateMessage):
            gsr_handle_update(self.tables[node.id], message, self.network.sim.now())

    def on_topology_change(self, affected: set[int]) -> None:
        now = self.network.sim.now()
        for nid in sorted(affected):
            gsr_set_neighbors(self.tables[nid], set(self.network.topology.neighbors(nid)), now)

    def route(self, node: MeshNode, packet: Packet) -> NextHopQueue:
        now = self.network.sim.now()
        decision = gsr_forward(self.tables[node.id], packet, self.network.topology, now)
        queue = node.queue_for(decision.link)
        queue.push(packet, now)
        return queue

    def poll(self, node: MeshNode, radio: Radio, now: float) -> tuple[bool, float | None]:
        return any(node.queues_on(radio.channel)), None

    def next_unit(self, node: MeshNode, radio: Radio, now: float) -> TransmissionUnit | None:
        waiting = [q for q in node.queues_on(radio.channel) if q]
        if not waiting:
            return None
        queue = select_queue_for_radio(waiting, self.frame, now)
        return TransmissionUnit(header_bytes=self.frame.header_bytes, packets=[queue.pop()], link=queue.link)

    def stats(self) -> dict[str, float]:
        return {"gsr_updates_sent": self.updates_sent}
