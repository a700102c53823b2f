"""
Unit-disk topology with multi-channel links, G = (V, E).
"""

import logging
import math

import networkx as nx

from net.types import Link, NodeSpec
from utils.errors import TopologyError

logger = logging.getLogger(__name__)

# Slack for floating-point positions sitting exactly on the range boundary.
RANGE_EPSILON = 1e-9


class Topology:
    """
    The node set and link set of one run.

    Links can be switched down and up by scripted events; hop distances
    are computed over links that are currently up, ignoring channels.
    """

    def __init__(self, nodes: dict[int, NodeSpec], links: list[Link], transmission_range_m: float):
        self.nodes = nodes
        self.links = sorted(links, key=lambda link: link.key)
        self.transmission_range_m = transmission_range_m
        self._by_key = {link.key: link for link in self.links}
        self._up: set[tuple[int, int, int]] = set(self._by_key)
        self._by_pair: dict[tuple[int, int], list[Link]] = {}
        for link in self.links:
            self._by_pair.setdefault(link.endpoints, []).append(link)
        self._up_by_pair = {pair: list(links) for pair, links in self._by_pair.items()}
        self._graph = nx.Graph()
        self._graph.add_nodes_from(sorted(nodes))
        self._graph.add_edges_from(link.endpoints for link in self.links)
        self._distances: dict[int, dict[int, int]] = {}

    def _require(self, node: int) -> None:
        if node not in self.nodes:
            raise TopologyError(f"unknown node id {node}")

    def link(self, a: int, b: int, channel: int) -> Link:
        key = (min(a, b), max(a, b), channel)
        if key not in self._by_key:
            raise TopologyError(f"no link between {a} and {b} on channel {channel}")
        return self._by_key[key]

    def links_between(self, u: int, v: int) -> list[Link]:
        """Up links joining u and v, lowest channel first."""
        return list(self._up_by_pair.get((min(u, v), max(u, v)), ()))

    def neighbors(self, u: int) -> list[int]:
        self._require(u)
        return sorted(self._graph.neighbors(u))

    def set_link_state(self, a: int, b: int, channel: int, up: bool) -> Link:
        """Switch one link up or down and invalidate cached distances."""
        link = self.link(a, b, channel)
        if up:
            self._up.add(link.key)
        else:
            self._up.discard(link.key)
        self._up_by_pair[link.endpoints] = [other for other in self._by_pair[link.endpoints] if other.key in self._up]
        if self.links_between(a, b):
            self._graph.add_edge(link.a, link.b)
        elif self._graph.has_edge(link.a, link.b):
            self._graph.remove_edge(link.a, link.b)
        self._distances.clear()
        logger.debug(f"link {link.key} {'up' if up else 'down'}")
        return link

    def distances_to(self, d: int) -> dict[int, int]:
        """Hop distance from every reachable node to d."""
        self._require(d)
        if d not in self._distances:
            self._distances[d] = dict(nx.single_source_shortest_path_length(self._graph, d))
        return self._distances[d]

    def hop_distance(self, u: int, v: int) -> int | None:
        """
        Minimum number of links on a u-v path.

        Returns:
            Hop count, 0 when u == v, None when v is unreachable

        Raises:
            TopologyError: If either node is unknown
        """
        self._require(u)
        return self.distances_to(v).get(u)

    def diameter(self) -> int | None:
        """Largest finite hop distance, None when the graph is disconnected."""
        if not nx.is_connected(self._graph):
            return None
        return nx.diameter(self._graph) if len(self.nodes) > 1 else 0


def build_topology(
    nodes: list[NodeSpec],
    range_m: float,
    loss_prob: float = 0.0,
) -> Topology:
    """
    Build the unit-disk graph: link (i, j, c) exists iff the nodes are at
    most range_m apart and both carry a radio on channel c.

    Raises:
        TopologyError: On duplicate ids, nodes without radios, or two radios
            of one node on the same channel
    """
    by_id: dict[int, NodeSpec] = {}
    for node in nodes:
        if node.id in by_id:
            raise TopologyError(f"duplicate node id {node.id}")
        if not node.radios:
            raise TopologyError(f"node {node.id} has no radios")
        if len(node.channels()) != len(node.radios):
            raise TopologyError(f"node {node.id} has two radios on one channel")
        by_id[node.id] = node

    links: list[Link] = []
    ordered = sorted(by_id.values(), key=lambda n: n.id)
    for i, first in enumerate(ordered):
        for second in ordered[i + 1:]:
            if math.dist(first.position, second.position) > range_m + RANGE_EPSILON:
                continue
            first_radios, second_radios = first.channels(), second.channels()
            for channel in sorted(first_radios.keys() & second_radios.keys()):
                rate = min(first_radios[channel].rate_bps, second_radios[channel].rate_bps)
                links.append(Link(first.id, second.id, channel, rate, loss_prob))

    logger.debug(f"built topology with {len(by_id)} nodes and {len(links)} links")
    return Topology(by_id, links, range_m)
