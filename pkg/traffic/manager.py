"""
Traffic sources and sinks bound to a running network.
"""

import logging
from dataclasses import replace

from metrics.collector import MetricsCollector
from net.network import MeshNetwork
from net.types import Packet
from sim.engine import Event, Simulator
from sim.streams import RandomStream
from traffic.flows import FlowKind, FlowSpec, cbr_schedule
from traffic.reliable import ReliableEvent, ReliableReceiver, ReliableState, reliable_on_event
from traffic.sink import SinkOutcome, sink_receive

logger = logging.getLogger(__name__)

ACK_BYTES = 40


class ReliableFlow:
    """Sender and receiver of one reliable flow, plus its retransmission timer."""

    def __init__(self, spec: FlowSpec):
        self.spec = spec
        self.state = ReliableState(window=spec.window, rto=spec.rto_initial_s)
        self.receiver = ReliableReceiver()
        self.packet_ids: dict[int, int] = {}
        self.timer: Event | None = None
        self.max_in_flight = 0
        self.retransmissions = 0


class TrafficManager:
    """Creates packets for every flow and handles their arrival."""

    def __init__(
        self,
        sim: Simulator,
        network: MeshNetwork,
        metrics: MetricsCollector,
        flows: list[FlowSpec],
        stream: RandomStream,
    ):
        self.sim = sim
        self.network = network
        self.metrics = metrics
        self.flows = {flow.flow_id: flow for flow in flows}
        self.reliable: dict[int, ReliableFlow] = {}
        self._stream = stream
        self._next_id = 0
        self._next_ack_id = -1

    def start(self) -> None:
        for flow in self.flows.values():
            if flow.kind is FlowKind.RELIABLE:
                self.reliable[flow.flow_id] = ReliableFlow(flow)
            times = cbr_schedule(flow)
            if flow.jitter_s > 0:
                times = [t + self._stream.uniform(0.0, flow.jitter_s) for t in times]
            self._schedule_next(flow, times, 0)
            logger.debug(f"flow {flow.flow_id} ({flow.kind.value}) will inject {len(times)} packets")

    def _schedule_next(self, flow: FlowSpec, times: list[float], k: int) -> None:
        if k < len(times):
            self.sim.schedule(max(times[k], self.sim.now()), self._produce, flow, times, k, label=f"flow-{flow.flow_id}")

    def _produce(self, flow: FlowSpec, times: list[float], k: int) -> None:
        if flow.kind is FlowKind.CBR:
            self._inject_new(flow, seq=k)
        else:
            rflow = self.reliable[flow.flow_id]
            rflow.state.available += 1
            self._apply(rflow, reliable_on_event(rflow.state, ReliableEvent.WINDOW_SPACE, self.sim.now()))
        self._schedule_next(flow, times, k + 1)

    def _new_packet(self, flow: FlowSpec, seq: int) -> Packet:
        packet = Packet(
            id=self._next_id,
            flow_id=flow.flow_id,
            src=flow.src,
            dst=flow.dst,
            size_bytes=flow.pkt_bytes,
            created_at=self.sim.now(),
            hop_budget=self.network.hop_budget,
            seq=seq,
        )
        self._next_id += 1
        return packet

    def _inject_new(self, flow: FlowSpec, seq: int) -> Packet:
        packet = self._new_packet(flow, seq)
        self.metrics.on_generated(packet, self.sim.now())
        self.network.inject(packet)
        return packet

    def _apply(self, rflow: ReliableFlow, sends: list[int]) -> None:
        """Put the sequence numbers chosen by the sender on the wire."""
        for seq in sends:
            if seq in rflow.packet_ids:
                rflow.retransmissions += 1
                packet = Packet(
                    id=rflow.packet_ids[seq],
                    flow_id=rflow.spec.flow_id,
                    src=rflow.spec.src,
                    dst=rflow.spec.dst,
                    size_bytes=rflow.spec.pkt_bytes,
                    created_at=self.sim.now(),
                    hop_budget=self.network.hop_budget,
                    seq=seq,
                )
                self.metrics.on_copy(packet)
                self.network.inject(packet)
            else:
                rflow.packet_ids[seq] = self._inject_new(rflow.spec, seq).id
        rflow.max_in_flight = max(rflow.max_in_flight, len(rflow.state.in_flight))
        self._arm_timer(rflow, restart=bool(sends))

    def _arm_timer(self, rflow: ReliableFlow, restart: bool) -> None:
        if not rflow.state.in_flight:
            self.sim.cancel(rflow.timer)
            rflow.timer = None
            return
        if rflow.timer is not None and not rflow.timer.cancelled and not restart:
            return
        self.sim.cancel(rflow.timer)
        rflow.timer = self.sim.schedule_in(rflow.state.rto, self._timeout, rflow, label=f"rto-{rflow.spec.flow_id}")

    def _timeout(self, rflow: ReliableFlow) -> None:
        rflow.timer = None
        self._apply(rflow, reliable_on_event(rflow.state, ReliableEvent.TIMEOUT, self.sim.now()))

    def on_delivery(self, node_id: int, packet: Packet) -> None:
        """Local delivery callback of the network."""
        now = self.sim.now()
        if packet.kind == "ack":
            self.metrics.on_delivered(packet, now)
            rflow = self.reliable.get(packet.flow_id)
            if rflow is not None:
                advanced = packet.seq > rflow.state.highest_cumulative_ack
                sends = reliable_on_event(rflow.state, ReliableEvent.ACK, now, ack_seq=packet.seq)
                self._apply(rflow, sends)
                if advanced and not sends:
                    self._arm_timer(rflow, restart=True)
            return
        outcome = sink_receive(packet, node_id, self.metrics, now)
        rflow = self.reliable.get(packet.flow_id)
        if rflow is None or outcome is SinkOutcome.MISROUTED:
            return
        cumulative = rflow.receiver.receive(packet.seq)
        ack = replace(
            packet,
            id=self._next_ack_id,
            src=packet.dst,
            dst=packet.src,
            size_bytes=ACK_BYTES,
            created_at=now,
            hop_budget=self.network.hop_budget,
            hops_taken=0,
            kind="ack",
            seq=cumulative,
            injection_distance=None,
        )
        self._next_ack_id -= 1
        self.metrics.on_ack_sent()
        self.network.inject(ack)
