"""
Tests for counters, formulas and the unique-id collector.
"""

import pytest

from metrics import Counters, MetricsCollector, TimeSeries, check_conservation, packet_loss, pdr, throughput
from net import Packet
from utils.errors import DropReason, InvariantViolation


def packet(pid, flow_id=0, size=512):
    return Packet(id=pid, flow_id=flow_id, src=0, dst=1, size_bytes=size, created_at=0.0, hop_budget=8)


def test_pdr():
    assert pdr(Counters(sent=100, received=97)) == pytest.approx(0.97)
    assert pdr(Counters(sent=0)) is None
    assert pdr(Counters(sent=40, received=40)) == 1.0


def test_packet_loss_count_and_ratio():
    loss = packet_loss(Counters(sent=100, received=97, dropped_queue=3))
    assert loss.count == 3
    assert loss.ratio == pytest.approx(0.03)
    assert packet_loss(Counters()).ratio is None


def test_loss_reconciles_with_drop_categories():
    c = Counters(sent=10, received=7, dropped_queue=2, dropped_noroute=1)
    loss = packet_loss(c)
    assert loss.count == loss.dropped + loss.in_flight == 3
    check_conservation(c)


def test_pdr_and_loss_ratio_are_complementary():
    c = Counters(sent=64, received=50, dropped_linkloss=14)
    assert pdr(c) + packet_loss(c).ratio == pytest.approx(1.0)


def test_conservation_failure_is_an_invariant_violation():
    with pytest.raises(InvariantViolation):
        check_conservation(Counters(sent=10, received=7, dropped_queue=2))
    with pytest.raises(InvariantViolation):
        check_conservation(Counters(sent=0, received=-1, dropped_queue=1))


def test_throughput_average():
    c = Counters(sent=1000, received=1000, bytes_delivered=1000 * 512)
    series = TimeSeries(bin_width=1.0, duration=60.0)
    result = throughput(c, 60.0, series)
    assert result.average_bps == pytest.approx(68_266.6667, rel=1e-6)
    assert len(result.per_bin_bps) == 60


def test_throughput_without_deliveries():
    result = throughput(Counters(), 10.0, TimeSeries(duration=10.0))
    assert result.average_bps == 0.0
    assert set(result.per_bin_bps) == {0.0}


def test_throughput_needs_positive_duration():
    with pytest.raises(ValueError):
        throughput(Counters(), 0.0, TimeSeries(duration=1.0))


def test_series_bins_sum_to_totals():
    series = TimeSeries(bin_width=0.5, duration=3.0)
    for t in (0.0, 0.4, 0.5, 2.9, 3.0):
        series.record_delivery(t, 100)
    assert len(series) == 6
    assert series.delivered_bytes == [200, 100, 0, 0, 0, 200]
    assert sum(series.delivered_packets) == 5
    assert series.bin_start(3) == 1.5


def test_cumulative_pdr():
    series = TimeSeries(bin_width=1.0, duration=3.0)
    series.record_sent(0.1)
    series.record_sent(0.2)
    series.record_delivery(0.3, 10)
    series.record_delivery(1.5, 10)
    assert series.cumulative_pdr() == [0.5, 1.0, 1.0]
    assert TimeSeries(duration=2.0).cumulative_pdr() == [None, None]


def test_collector_resolves_every_outcome():
    metrics = MetricsCollector([0, 1], duration=10.0)
    for pid in range(4):
        metrics.on_generated(packet(pid), 0.0)
    metrics.on_generated(packet(10, flow_id=1), 0.0)

    metrics.on_delivered(packet(0), 1.0)
    metrics.on_dropped(packet(1), DropReason.QUEUE)
    metrics.on_dropped(packet(2), DropReason.HOPBUDGET)
    # packet 3 is still queued somewhere
    metrics.on_copy(packet(10, flow_id=1))
    metrics.on_dropped(packet(10, flow_id=1), DropReason.LINKLOSS)
    metrics.on_delivered(packet(10, flow_id=1), 2.0)

    assert metrics.live_copies() == 1
    totals = metrics.finalize(control_bytes_sent=99)
    flow0 = totals.per_flow[0]
    assert (flow0.sent, flow0.received, flow0.dropped_queue, flow0.dropped_hopbudget, flow0.in_flight) == (4, 1, 1, 1, 1)
    assert totals.per_flow[1].received == 1
    assert totals.per_flow[1].dropped == 0
    assert totals.total.sent == 5
    assert totals.total.control_bytes_sent == 99
    assert totals.drop_events == {"hopbudget": 1, "linkloss": 1, "queue": 1}
    check_conservation(totals.total)


def test_dropped_id_takes_reason_of_last_copy():
    metrics = MetricsCollector([0], duration=5.0)
    metrics.on_generated(packet(0), 0.0)
    metrics.on_copy(packet(0))
    metrics.on_dropped(packet(0), DropReason.QUEUE)
    metrics.on_dropped(packet(0), DropReason.NOROUTE)
    totals = metrics.finalize()
    assert totals.total.dropped_noroute == 1
    assert totals.total.dropped_queue == 0


def test_acks_are_kept_out_of_data_counters():
    metrics = MetricsCollector([0], duration=5.0)
    ack = packet(-1)
    ack.kind = "ack"
    metrics.on_ack_sent()
    metrics.on_delivered(ack, 1.0)
    totals = metrics.finalize()
    assert totals.total.received == 0
    assert (totals.acks_sent, totals.acks_delivered) == (1, 1)


def test_generating_an_id_twice_is_an_error():
    metrics = MetricsCollector([0], duration=5.0)
    metrics.on_generated(packet(0), 0.0)
    with pytest.raises(InvariantViolation):
        metrics.on_generated(packet(0), 0.0)
