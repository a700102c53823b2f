"""
Mesh runtime: moves packets between node queues, radios and the medium.
"""

import logging
from typing import TYPE_CHECKING, Callable

from forwarding.aggregation import TransmissionUnit, deaggregate
from net.medium import Medium, Transmission
from net.node import ControlFrame, MeshNode, Radio
from net.topology import Topology
from net.types import Packet
from sim.engine import Simulator
from utils.errors import DropReason, InvariantViolation, PacketDropped

if TYPE_CHECKING:
    from forwarding.base import ForwardingStrategy

logger = logging.getLogger(__name__)


class MeshNetwork:
    """
    Wires nodes to the medium and to a forwarding strategy.

    Local deliveries and drops are reported through callbacks so the
    runtime stays independent of traffic and metrics bookkeeping.
    """

    def __init__(
        self,
        sim: Simulator,
        topology: Topology,
        medium: Medium,
        strategy: "ForwardingStrategy",
        mtu_bytes: int = 1500,
        queue_capacity: int = 50,
        hop_budget: int | None = None,
        on_delivery: Callable[[int, Packet], None] | None = None,
        on_drop: Callable[[Packet, DropReason], None] | None = None,
        record: bool = False,
    ):
        self.sim = sim
        self.topology = topology
        self.medium = medium
        self.strategy = strategy
        self.mtu_bytes = mtu_bytes
        self.nodes = {nid: MeshNode(spec, queue_capacity) for nid, spec in sorted(topology.nodes.items())}
        self.hop_budget = hop_budget if hop_budget is not None else 2 * len(self.nodes)
        self.on_delivery = on_delivery
        self.on_drop = on_drop
        self.airborne_data = 0
        self.units_sent = 0
        self.packets_sent = 0
        self.payload_bytes_sent = 0
        self.control_bytes_sent = 0
        self.unit_log: list[TransmissionUnit] | None = [] if record else None
        self.delivery_log: list[tuple[int, Packet]] | None = [] if record else None
        strategy.attach(self)

    def start(self) -> None:
        self.strategy.start()

    def inject(self, packet: Packet) -> None:
        """Hand a freshly created packet to its source node."""
        if packet.injection_distance is None:
            packet.injection_distance = self.topology.hop_distance(packet.src, packet.dst)
        self.forward(packet.src, packet)

    def forward(self, node_id: int, packet: Packet) -> None:
        node = self.nodes[node_id]
        if packet.dst == node_id:
            if self.delivery_log is not None:
                self.delivery_log.append((node_id, packet))
            if self.on_delivery:
                self.on_delivery(node_id, packet)
            return
        try:
            queue = self.strategy.route(node, packet)
        except PacketDropped as drop:
            logger.debug(f"node {node_id} dropped packet {packet.id}: {drop}")
            self.drop(packet, drop.reason)
            return
        self.kick(node, queue.link.channel)

    def drop(self, packet: Packet, reason: DropReason) -> None:
        if self.on_drop:
            self.on_drop(packet, reason)

    def send_control(self, node_id: int, frame: ControlFrame) -> None:
        node = self.nodes[node_id]
        node.control[frame.link.channel].append(frame)
        self.control_bytes_sent += frame.size_bytes
        self.kick(node, frame.link.channel)

    def kick(self, node: MeshNode, channel: int) -> None:
        """Ask for the channel if the radio is idle and has something to send."""
        radio = node.radios[channel]
        if not radio.idle or radio.requested:
            return
        now = self.sim.now()
        if node.control[channel]:
            ready, wake_at = True, None
        else:
            ready, wake_at = self.strategy.poll(node, radio, now)
        if ready:
            self.sim.cancel(radio.timer)
            radio.timer = None
            radio.requested = True
            self.medium.request(channel, lambda: self._grant(node, radio))
        elif wake_at is not None:
            if radio.timer is not None and not radio.timer.cancelled and radio.timer.fire_time <= wake_at:
                return
            self.sim.cancel(radio.timer)
            radio.timer = self.sim.schedule(max(wake_at, now), self._wake, node, radio, label="hold-timer")

    def _wake(self, node: MeshNode, radio: Radio) -> None:
        radio.timer = None
        self.kick(node, radio.channel)

    def _grant(self, node: MeshNode, radio: Radio) -> Transmission | None:
        radio.requested = False
        control = node.control[radio.channel]
        if control:
            frame = control.popleft()
            transmission = Transmission(
                link=frame.link,
                sender=node.id,
                frame_bytes=frame.size_bytes,
                payload=frame,
                on_delivered=self._control_delivered,
                on_finished=self._finished,
            )
        else:
            unit = self.strategy.next_unit(node, radio, self.sim.now())
            if unit is None:
                return None
            self._check_unit(node, unit)
            payload_bytes = unit.payload_bytes
            self.airborne_data += sum(1 for p in unit.packets if p.is_data)
            self.units_sent += 1
            self.packets_sent += len(unit)
            self.payload_bytes_sent += payload_bytes
            if self.unit_log is not None:
                self.unit_log.append(unit)
            transmission = Transmission(
                link=unit.link,
                sender=node.id,
                frame_bytes=unit.header_bytes + payload_bytes,
                payload=unit,
                on_delivered=self._unit_delivered,
                on_lost=self._unit_lost,
                on_finished=self._finished,
            )
        radio.idle = False
        return transmission

    def _check_unit(self, node: MeshNode, unit: TransmissionUnit) -> None:
        if not unit.packets:
            raise InvariantViolation(f"node {node.id} built an empty transmission unit")
        if unit.total_bytes > self.mtu_bytes:
            raise InvariantViolation(
                f"node {node.id} built a {unit.total_bytes}-byte unit above the {self.mtu_bytes}-byte MTU"
            )
        if unit.link is None or unit.link.channel not in node.radios:
            raise InvariantViolation(f"node {node.id} built a unit without a usable link")

    def _finished(self, transmission: Transmission) -> None:
        node = self.nodes[transmission.sender]
        radio = node.radios[transmission.link.channel]
        radio.idle = True
        self.kick(node, radio.channel)

    def _control_delivered(self, transmission: Transmission) -> None:
        receiver = self.nodes[transmission.receiver]
        self.strategy.on_control(receiver, transmission.payload.message)

    def _unit_delivered(self, transmission: Transmission) -> None:
        unit: TransmissionUnit = transmission.payload
        self.airborne_data -= sum(1 for p in unit.packets if p.is_data)
        receiver = transmission.receiver
        for packet in deaggregate(unit):
            packet.hops_taken += 1
            self.forward(receiver, packet)

    def _unit_lost(self, transmission: Transmission) -> None:
        unit: TransmissionUnit = transmission.payload
        self.airborne_data -= sum(1 for p in unit.packets if p.is_data)
        for packet in unit.packets:
            self.drop(packet, DropReason.LINKLOSS)

    def set_link_state(self, a: int, b: int, channel: int, up: bool) -> None:
        """
        Apply a scripted link event. Packets queued on a link that went down
        are forwarded again from the node holding them.
        """
        link = self.topology.set_link_state(a, b, channel, up)
        logger.info(f"t={self.sim.now():.3f} link {a}-{b} ch{channel} {'up' if up else 'down'}")
        self.strategy.on_topology_change({a, b})
        if up:
            return
        for node_id in (link.a, link.b):
            node = self.nodes[node_id]
            control = node.control[channel]
            kept = [frame for frame in control if frame.link.key != link.key]
            control.clear()
            control.extend(kept)
            queue = node.queues.get((link.other(node_id), channel))
            if queue is None:
                continue
            for packet in queue.drain():
                self.forward(node_id, packet)

    def data_packets_in_network(self) -> int:
        """Data packet copies sitting in queues or on the air."""
        return self.airborne_data + sum(node.queued_data_packets() for node in self.nodes.values())
