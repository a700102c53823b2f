"""
Global State Routing tables and operations.
"""

from routing.gsr import (
    DELIVER,
    ForwardDecision,
    GsrConfig,
    GsrTables,
    LinkStateEntry,
    RoutingUpdateMessage,
    gsr_compute_routes,
    gsr_forward,
    gsr_handle_update,
    gsr_init,
    gsr_periodic_update,
    gsr_set_neighbors,
)

__all__ = [
    'DELIVER',
    'ForwardDecision',
    'GsrConfig',
    'GsrTables',
    'LinkStateEntry',
    'RoutingUpdateMessage',
    'gsr_compute_routes',
    'gsr_forward',
    'gsr_handle_update',
    'gsr_init',
    'gsr_periodic_update',
    'gsr_set_neighbors',
]
