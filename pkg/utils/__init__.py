"""
Shared utilities: settings, logging setup and the error hierarchy.
"""

from utils.config import Settings, configure_logging, load_settings
from utils.errors import (
    DropReason,
    HopBudgetExhaustedError,
    InvariantViolation,
    MeshSimError,
    NoRouteError,
    PacketDropped,
    QueueOverflowError,
    ScenarioError,
    SchedulingError,
    TopologyError,
    UsageError,
)

__all__ = [
    'Settings',
    'configure_logging',
    'load_settings',
    'DropReason',
    'HopBudgetExhaustedError',
    'InvariantViolation',
    'MeshSimError',
    'NoRouteError',
    'PacketDropped',
    'QueueOverflowError',
    'ScenarioError',
    'SchedulingError',
    'TopologyError',
    'UsageError',
]
