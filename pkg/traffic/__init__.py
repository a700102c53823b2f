"""
Traffic generation: CBR datagram flows and a windowed reliable flow.
"""

from traffic.flows import FlowKind, FlowSpec, cbr_schedule, injection_count
from traffic.manager import TrafficManager
from traffic.reliable import ReliableEvent, ReliableReceiver, ReliableState, reliable_on_event
from traffic.sink import SinkOutcome, sink_receive

__all__ = [
    'FlowKind',
    'FlowSpec',
    'cbr_schedule',
    'injection_count',
    'TrafficManager',
    'ReliableEvent',
    'ReliableReceiver',
    'ReliableState',
    'reliable_on_event',
    'SinkOutcome',
    'sink_receive',
]
