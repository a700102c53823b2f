"""
Network model: topology, interface queues, shared medium and node runtime.
"""

from net.medium import ChannelMedium, Medium, Transmission
from net.queues import InterfaceQueue, NextHopQueue
from net.topology import Topology, build_topology
from net.types import Link, NodeSpec, Packet, RadioSpec

__all__ = [
    'ChannelMedium',
    'Medium',
    'Transmission',
    'InterfaceQueue',
    'NextHopQueue',
    'Topology',
    'build_topology',
    'Link',
    'NodeSpec',
    'Packet',
    'RadioSpec',
]
