"""
Forwarding layer: aggregation primitives, AAL2R operations and the
pluggable strategy registry.
"""

from forwarding.aal2r import (
    CandidateSet,
    aal2r_on_radio_idle,
    candidate_next_hops,
    enqueue_packet,
    ready_queues,
    select_queue_for_radio,
)
from forwarding.aggregation import (
    Aal2rConfig,
    QueuePriority,
    TransmissionUnit,
    assemble_unit,
    deaggregate,
    spare_space,
    unit_is_full,
)
from forwarding.base import ForwardingStrategy
from forwarding.factory import StrategyFactory, register_builtin_strategies
from forwarding.scheduler import SplitScheduler, weighted_pick

__all__ = [
    'CandidateSet',
    'aal2r_on_radio_idle',
    'candidate_next_hops',
    'enqueue_packet',
    'ready_queues',
    'select_queue_for_radio',
    'Aal2rConfig',
    'QueuePriority',
    'TransmissionUnit',
    'assemble_unit',
    'deaggregate',
    'spare_space',
    'unit_is_full',
    'ForwardingStrategy',
    'StrategyFactory',
    'register_builtin_strategies',
    'SplitScheduler',
    'weighted_pick',
]
