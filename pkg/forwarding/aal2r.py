"""
Aggregation aware layer-2.5 forwarding.

Packets go to neighbors strictly one hop closer to the destination, which
bounds every path by the hop distance at injection. Among the candidate
queues, those that can still absorb the packet into the unit being built
are preferred; the split between eligible queues follows link bandwidth.
"""

import logging
from dataclasses import dataclass, field

from forwarding.aggregation import (
    Aal2rConfig,
    QueuePriority,
    TransmissionUnit,
    assemble_unit,
    spare_space,
    unit_is_full,
)
from forwarding.scheduler import SplitScheduler, weighted_pick
from net.queues import NextHopQueue
from net.topology import Topology
from net.types import Packet
from utils.errors import NoRouteError

logger = logging.getLogger(__name__)

# Timer slack: a head stamped at t is ready at t + hold even after rounding.
HOLD_EPSILON = 1e-9


@dataclass
class CandidateSet:
    """Neighbors one hop closer to `destination`, with one queue per link."""

    node: int
    destination: int
    next_hops: list[int] = field(default_factory=list)
    queues: list[NextHopQueue] = field(default_factory=list)


def candidate_next_hops(u: int, d: int, topo: Topology) -> CandidateSet:
    """
    Neighbors v of u with hop_distance(v, d) == hop_distance(u, d) - 1.

    Raises:
        NoRouteError: If d is unreachable from u
    """
    if u == d:
        raise ValueError("candidate next hops are undefined for a packet at its destination")
    distances = topo.distances_to(d)
    mine = distances.get(u)
    if mine is None:
        raise NoRouteError(f"destination {d} unreachable from {u}")
    closer = [v for v in topo.neighbors(u) if distances.get(v) == mine - 1]
    return CandidateSet(node=u, destination=d, next_hops=closer)


def enqueue_packet(
    p: Packet,
    cands: CandidateSet,
    cfg: Aal2rConfig,
    sched: SplitScheduler,
    now: float = 0.0,
) -> NextHopQueue:
    """
    Place a packet on one candidate queue.

    The aggregation set holds the non-empty queues whose spare space still
    fits the packet. When it is empty (all queues empty, or none with room)
    every candidate queue is eligible. The split scheduler picks among the
    eligible queues.

    Raises:
        QueueOverflowError: If the chosen queue is at capacity (tail drop)
    """
    if not cands.queues:
        raise NoRouteError(f"no candidate queue at node {cands.node} for {cands.destination}")
    aggregation_set = [q for q in cands.queues if q and spare_space(q, cfg) >= p.size_bytes]
    eligible = aggregation_set or cands.queues
    for q in eligible:
        if q.key not in sched.weights:
            sched.set_weight(q.key, q.link.rate_bps)
    chosen_key = weighted_pick([q.key for q in eligible], sched)
    chosen = next(q for q in eligible if q.key == chosen_key)
    chosen.push(p, now)
    return chosen


def select_queue_for_radio(
    queues: list[NextHopQueue],
    cfg: Aal2rConfig,
    now: float = 0.0,
) -> NextHopQueue:
    """
    Pick the queue to serve: the oldest head packet first, or under
    avg_age the largest mean waiting time. Ties go to the lowest next hop.
    """
    ready = [q for q in queues if q]
    if not ready:
        raise ValueError("no non-empty queue to serve")
    if cfg.queue_priority is QueuePriority.AVG_AGE:
        return min(ready, key=lambda q: (-q.mean_age(now), q.key))
    return min(ready, key=lambda q: (q.head().enqueue_timestamp, q.key))


def ready_queues(
    queues: list[NextHopQueue],
    cfg: Aal2rConfig,
    now: float,
) -> tuple[list[NextHopQueue], float | None]:
    """
    Queues that may be served now under the hold-time policy.

    Returns:
        Tuple of (ready queues, earliest time a held queue becomes ready)
    """
    waiting = [q for q in queues if q]
    if cfg.hold_time_s <= 0:
        return waiting, None
    ready, wake_at = [], None
    for q in waiting:
        release = q.head().enqueue_timestamp + cfg.hold_time_s
        if now + HOLD_EPSILON >= release or unit_is_full(q, cfg):
            ready.append(q)
        elif wake_at is None or release < wake_at:
            wake_at = release
    return ready, wake_at


def aal2r_on_radio_idle(
    queues: list[NextHopQueue],
    cfg: Aal2rConfig,
    now: float,
) -> tuple[TransmissionUnit | None, float | None]:
    """
    Build the next frame for an idle radio.

    Returns:
        Tuple of (unit to transmit or None, wake-up time when held)
    """
    ready, wake_at = ready_queues(queues, cfg, now)
    if not ready:
        return None, wake_at
    queue = select_queue_for_radio(ready, cfg, now)
    return assemble_unit(queue, cfg), None
