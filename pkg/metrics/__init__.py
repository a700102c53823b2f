"""
Counters, time series and the delivery/loss/throughput formulas.
"""

from metrics.collector import MetricsCollector, RunTotals
from metrics.counters import Counters, TimeSeries
from metrics.formulas import (
    LossSummary,
    ThroughputSummary,
    check_conservation,
    packet_loss,
    pdr,
    throughput,
)

__all__ = [
    'MetricsCollector',
    'RunTotals',
    'Counters',
    'TimeSeries',
    'LossSummary',
    'ThroughputSummary',
    'check_conservation',
    'packet_loss',
    'pdr',
    'throughput',
]
