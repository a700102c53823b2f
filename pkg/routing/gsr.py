"""
Global State Routing: per-node neighbor list, topology table, next-hop
table and distance table, refreshed by periodic full-table exchange
with neighbors and hop-count shortest paths.
"""

import logging
from dataclasses import dataclass, field

from net.topology import Topology
from net.types import Link, Packet
from utils.errors import HopBudgetExhaustedError, NoRouteError

logger = logging.getLogger(__name__)

UPDATE_BASE_BYTES = 8
UPDATE_ENTRY_BYTES = 12


@dataclass
class GsrConfig:
    """GSR timing."""

    update_interval_s: float = 1.0


@dataclass(frozen=True)
class LinkStateEntry:
    """Link state advertised by one origin node."""

    origin: int
    neighbors: frozenset[int]
    sequence: int
    timestamp: float = 0.0


@dataclass
class RoutingUpdateMessage:
    """Full topology table of the sender, as put on the air."""

    sender: int
    entries: list[LinkStateEntry]

    @property
    def wire_size_bytes(self) -> int:
        return UPDATE_BASE_BYTES + UPDATE_ENTRY_BYTES * len(self.entries)


@dataclass
class GsrTables:
    """The four tables a node maintains."""

    node_id: int
    neighbor_list: set[int] = field(default_factory=set)
    topology_table: dict[int, LinkStateEntry] = field(default_factory=dict)
    next_hop_table: dict[int, int] = field(default_factory=dict)
    distance_table: dict[int, int] = field(default_factory=dict)
    last_read: float = 0.0

    @property
    def sequence(self) -> int:
        return self.topology_table[self.node_id].sequence


@dataclass(frozen=True)
class ForwardDecision:
    """Outcome of a forwarding lookup: deliver locally or send over `link`."""

    deliver: bool
    next_hop: int | None = None
    link: Link | None = None


DELIVER = ForwardDecision(deliver=True)


def gsr_init(node: int, neighbors: set[int] | frozenset[int], now: float = 0.0) -> GsrTables:
    """Fresh tables: only the self entry (sequence 0) is known."""
    tables = GsrTables(node_id=node, neighbor_list=set(neighbors))
    tables.topology_table[node] = LinkStateEntry(node, frozenset(neighbors), 0, now)
    gsr_compute_routes(tables)
    return tables


def gsr_periodic_update(tables: GsrTables, now: float = 0.0) -> RoutingUpdateMessage:
    """
    Bump the own sequence number and build the message sent to each neighbor.
    """
    own = tables.topology_table[tables.node_id]
    tables.topology_table[tables.node_id] = LinkStateEntry(
        tables.node_id, frozenset(tables.neighbor_list), own.sequence + 1, now
    )
    entries = [tables.topology_table[origin] for origin in sorted(tables.topology_table)]
    return RoutingUpdateMessage(sender=tables.node_id, entries=entries)


def gsr_set_neighbors(tables: GsrTables, neighbors: set[int], now: float = 0.0) -> bool:
    """
    Replace the neighbor list after a link change.

    Returns:
        True if the neighbor list changed
    """
    neighbors = set(neighbors)
    if neighbors == tables.neighbor_list:
        return False
    tables.neighbor_list = neighbors
    own = tables.topology_table[tables.node_id]
    tables.topology_table[tables.node_id] = LinkStateEntry(
        tables.node_id, frozenset(neighbors), own.sequence + 1, now
    )
    gsr_compute_routes(tables)
    return True


def gsr_handle_update(tables: GsrTables, msg: RoutingUpdateMessage, now: float = 0.0) -> bool:
    """
    Merge a neighbor's table: an entry replaces the local copy only when its
    sequence number is strictly greater. Messages from non-neighbors are ignored.

    Returns:
        True if any entry changed (routes were recomputed)
    """
    if msg.sender not in tables.neighbor_list:
        logger.debug(f"node {tables.node_id} ignored update from non-neighbor {msg.sender}")
        return False
    changed = False
    for entry in msg.entries:
        if entry.origin == tables.node_id:
            continue
        local = tables.topology_table.get(entry.origin)
        if local is None or entry.sequence > local.sequence:
            tables.topology_table[entry.origin] = LinkStateEntry(
                entry.origin, entry.neighbors, entry.sequence, now
            )
            changed = True
    if changed:
        gsr_compute_routes(tables)
    return changed


def gsr_compute_routes(tables: GsrTables) -> tuple[dict[int, int], dict[int, int]]:
    """
    Hop-count shortest paths over the known link states.

    Breadth-first layers from the node itself; the next hop of a destination
    is the lowest first hop among all its shortest paths.
    """
    me = tables.node_id
    distance = {me: 0}
    next_hop: dict[int, int] = {}
    frontier = [me]
    level = 0
    while frontier:
        level += 1
        following: dict[int, int] = {}
        for node in frontier:
            entry = tables.topology_table.get(node)
            if entry is None:
                continue
            for neighbor in entry.neighbors:
                if neighbor in distance:
                    continue
                first = neighbor if node == me else next_hop[node]
                if neighbor not in following or first < following[neighbor]:
                    following[neighbor] = first
        for node, first in following.items():
            distance[node] = level
            next_hop[node] = first
        frontier = sorted(following)
    tables.next_hop_table = next_hop
    tables.distance_table = distance
    return next_hop, distance


def gsr_forward(tables: GsrTables, packet: Packet, topology: Topology, now: float = 0.0) -> ForwardDecision:
    """
    Deliver locally or look up the next hop and its lowest-channel link.

    Raises:
        HopBudgetExhaustedError: If a relayed packet has no hops left
        NoRouteError: If the destination is not in the next-hop table
    """
    if packet.dst == tables.node_id:
        return DELIVER
    if packet.hop_budget <= 0:
        raise HopBudgetExhaustedError(f"packet {packet.id} out of hops at node {tables.node_id}")
    tables.last_read = now
    next_hop = tables.next_hop_table.get(packet.dst)
    if next_hop is None:
        raise NoRouteError(f"node {tables.node_id} has no route to {packet.dst}")
    links = topology.links_between(tables.node_id, next_hop)
    if not links:
        raise NoRouteError(f"node {tables.node_id} lost its link to {next_hop}")
    packet.hop_budget -= 1
    return ForwardDecision(deliver=False, next_hop=next_hop, link=links[0])
