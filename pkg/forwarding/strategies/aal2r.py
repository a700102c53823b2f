"""
AAL2R forwarding: bounded-hop multipath with aggregation into MTU-sized units.
"""

import logging

from forwarding.aal2r import (
    CandidateSet,
    aal2r_on_radio_idle,
    candidate_next_hops,
    enqueue_packet,
    ready_queues,
)
from forwarding.aggregation import Aal2rConfig, TransmissionUnit
from forwarding.base import ForwardingStrategy
from forwarding.scheduler import SplitScheduler
from net.node import MeshNode, Radio
from net.queues import NextHopQueue
from net.types import Packet
from utils.errors import HopBudgetExhaustedError

logger = logging.getLogger(__name__)


class Aal2rStrategy(ForwardingStrategy):
    """Aggregation aware layer-2.5 forwarding."""

    def __init__(self, config: Aal2rConfig | None = None):
        super().__init__()
        self.config = config or Aal2rConfig()
        self.schedulers: dict[tuple[int, int], SplitScheduler] = {}
        self._candidates: dict[tuple[int, int], CandidateSet] = {}

    @property
    def name(self) -> str:
        return "aal2r"

    @property
    def description(self) -> str:
        return "Aggregation aware layer-2.5 routing: bandwidth-split multipath with packet aggregation"

    def route(self, node: MeshNode, packet: Packet) -> NextHopQueue:
        if packet.hop_budget <= 0:
            raise HopBudgetExhaustedError(f"packet {packet.id} out of hops at node {node.id}")
        cands = self._candidates_for(node, packet.dst)
        packet.hop_budget -= 1
        sched = self.schedulers.get((node.id, packet.dst))
        if sched is None:
            sched = self.schedulers[(node.id, packet.dst)] = SplitScheduler()
        return enqueue_packet(packet, cands, self.config, sched, self.network.sim.now())

    def _candidates_for(self, node: MeshNode, dst: int) -> CandidateSet:
        """Candidate set of (node, dst) with its queues, kept until the topology changes."""
        cands = self._candidates.get((node.id, dst))
        if cands is None:
            topology = self.network.topology
            cands = candidate_next_hops(node.id, dst, topology)
            for next_hop in cands.next_hops:
                for link in topology.links_between(node.id, next_hop):
                    cands.queues.append(node.queue_for(link))
            self._candidates[(node.id, dst)] = cands
        return cands

    def on_topology_change(self, affected: set[int]) -> None:
        self._candidates.clear()

    def poll(self, node: MeshNode, radio: Radio, now: float) -> tuple[bool, float | None]:
        ready, wake_at = ready_queues(node.queues_on(radio.channel), self.config, now)
        return bool(ready), wake_at

    def next_unit(self, node: MeshNode, radio: Radio, now: float) -> TransmissionUnit | None:
        unit, _ = aal2r_on_radio_idle(node.queues_on(radio.channel), self.config, now)
        return unit
