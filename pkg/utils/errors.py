"""
Exception hierarchy shared by the simulator packages.
"""

from enum import Enum


class MeshSimError(Exception):
    """Base class for all simulator errors."""


class SchedulingError(MeshSimError):
    """An event was scheduled before the current virtual time."""


class TopologyError(MeshSimError):
    """Invalid node set, or a lookup of a node that does not exist."""


class ScenarioError(MeshSimError):
    """Scenario file could not be parsed or failed validation."""


class UsageError(MeshSimError):
    """Bad command-line usage or an impossible request."""


class InvariantViolation(MeshSimError):
    """An internal invariant failed; this is a bug, not a result."""


class DropReason(str, Enum):
    QUEUE = "queue"
    NOROUTE = "noroute"
    HOPBUDGET = "hopbudget"
    LINKLOSS = "linkloss"


class PacketDropped(MeshSimError):
    """A packet left the network without reaching its destination."""

    reason: DropReason = DropReason.NOROUTE

    def __init__(self, message: str = ""):
        super().__init__(message or self.reason.value)


class NoRouteError(PacketDropped):
    reason = DropReason.NOROUTE


class HopBudgetExhaustedError(PacketDropped):
    reason = DropReason.HOPBUDGET


class QueueOverflowError(PacketDropped):
    reason = DropReason.QUEUE
