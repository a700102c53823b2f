"""
Tests for the topology builder, interface queues and the channel medium.
"""

import networkx as nx
import numpy as np
import pytest

from net import Link, Medium, NextHopQueue, NodeSpec, Packet, RadioSpec, build_topology
from sim import RandomStream, Simulator
from utils.errors import QueueOverflowError, TopologyError


def node(nid, x, y=0.0, channels=(1,), rate=6e6):
    return NodeSpec(nid, (x, y), tuple(RadioSpec(ch, rate) for ch in channels))


def packet(pid, size=100, dst=9):
    return Packet(id=pid, flow_id=0, src=0, dst=dst, size_bytes=size, created_at=0.0, hop_budget=10)


def test_nodes_at_range_share_a_link():
    topo = build_topology([node(0, 0.0), node(1, 100.0)], range_m=100.0)
    assert [link.key for link in topo.links] == [(0, 1, 1)]
    assert topo.hop_distance(0, 1) == 1


def test_nodes_beyond_range_are_not_linked():
    topo = build_topology([node(0, 0.0), node(1, 100.001)], range_m=100.0)
    assert topo.links == []
    assert topo.hop_distance(0, 1) is None


def test_links_exist_per_shared_channel():
    topo = build_topology(
        [node(0, 0.0, channels=(1, 2, 3)), node(1, 50.0, channels=(3, 2))],
        range_m=120.0,
    )
    assert [link.channel for link in topo.links_between(1, 0)] == [2, 3]


def test_disjoint_channels_mean_no_link():
    topo = build_topology([node(0, 0.0, channels=(1,)), node(1, 50.0, channels=(2,))], range_m=120.0)
    assert topo.links == []


def test_link_rate_is_the_slower_radio():
    topo = build_topology([node(0, 0.0, rate=6e6), node(1, 50.0, rate=2e6)], range_m=120.0)
    assert topo.links[0].rate_bps == 2e6


def test_line_distances():
    topo = build_topology([node(i, i * 100.0) for i in range(4)], range_m=120.0)
    assert topo.hop_distance(0, 3) == 3
    assert topo.hop_distance(2, 2) == 0
    assert topo.neighbors(1) == [0, 2]
    assert topo.diameter() == 3


def test_unknown_node_is_an_error():
    topo = build_topology([node(0, 0.0), node(1, 50.0)], range_m=120.0)
    with pytest.raises(TopologyError):
        topo.hop_distance(0, 7)


@pytest.mark.parametrize("nodes", [
    [node(0, 0.0), node(0, 50.0)],
    [NodeSpec(0, (0.0, 0.0), ())],
    [NodeSpec(0, (0.0, 0.0), (RadioSpec(1), RadioSpec(1)))],
])
def test_invalid_node_sets_are_rejected(nodes):
    with pytest.raises(TopologyError):
        build_topology(nodes, range_m=120.0)


def test_link_down_changes_distances():
    topo = build_topology([node(i, i * 100.0) for i in range(3)] + [node(3, 100.0, 100.0)], range_m=120.0)
    assert topo.hop_distance(0, 2) == 2
    topo.set_link_state(0, 1, 1, up=False)
    assert topo.hop_distance(0, 2) is None
    assert topo.links_between(0, 1) == []
    topo.set_link_state(0, 1, 1, up=True)
    assert topo.hop_distance(0, 2) == 2


def test_link_down_on_one_channel_keeps_the_other():
    topo = build_topology([node(0, 0.0, channels=(1, 2)), node(1, 50.0, channels=(1, 2))], range_m=120.0)
    topo.set_link_state(0, 1, 1, up=False)
    assert topo.hop_distance(0, 1) == 1
    assert [link.channel for link in topo.links_between(0, 1)] == [2]


def test_random_unit_disk_distances_match_networkx():
    rng = np.random.default_rng(3)
    for _ in range(20):
        positions = rng.uniform(0, 300, size=(12, 2))
        nodes = [node(i, float(x), float(y)) for i, (x, y) in enumerate(positions)]
        topo = build_topology(nodes, range_m=120.0)
        graph = nx.Graph()
        graph.add_nodes_from(range(12))
        for i in range(12):
            for j in range(i + 1, 12):
                if np.hypot(*(positions[i] - positions[j])) <= 120.0:
                    graph.add_edge(i, j)
        expected = dict(nx.all_pairs_shortest_path_length(graph))
        for u in range(12):
            for v in range(12):
                assert topo.hop_distance(u, v) == expected[u].get(v)


def test_queue_is_fifo_and_stamps_packets():
    link = Link(0, 1, 1, 6e6)
    q = NextHopQueue(0, 1, link, capacity=3)
    for i in range(3):
        q.push(packet(i), now=float(i))
    assert [p.enqueue_timestamp for p in q] == [0.0, 1.0, 2.0]
    assert q.total_bytes == 300
    assert q.mean_age(3.0) == 2.0
    assert q.pop().id == 0
    assert q.head().id == 1
    assert q.key == (1, 1)


def test_full_queue_tail_drops():
    q = NextHopQueue(0, 1, Link(0, 1, 1, 6e6), capacity=1)
    q.push(packet(0), 0.0)
    with pytest.raises(QueueOverflowError):
        q.push(packet(1), 0.0)
    assert len(q) == 1


def make_medium(**kwargs):
    sim = Simulator()
    return sim, Medium(sim, RandomStream(1).fork("loss"), **kwargs)


def test_idle_channel_frame_timing():
    """Test: 1500-byte frame at 6 Mb/s starts at 0 and ends at 0.002 s"""
    sim, medium = make_medium()
    link = Link(0, 1, 1, 6e6)
    delivered = []
    tx = medium.transmit_frame(link, 1500, at=0.0, on_delivered=lambda t: delivered.append(sim.now()))
    sim.run_until(1.0)
    assert tx.start == 0.0
    assert tx.end == pytest.approx(0.002)
    assert delivered == [pytest.approx(0.002)]
    assert tx.receiver == 1


def test_busy_channel_serializes_frames():
    sim, medium = make_medium(record=True)
    link = Link(0, 1, 1, 6e6)
    first = medium.transmit_frame(link, 1500, at=0.0)
    second = medium.transmit_frame(Link(2, 3, 1, 6e6), 1500, at=0.001)
    sim.run_until(1.0)
    assert second.start == pytest.approx(first.end)
    assert second.end == pytest.approx(0.004)
    assert medium.frames_sent == 2
    assert medium.frame_bytes_sent == 3000


def test_frames_on_different_channels_overlap():
    sim, medium = make_medium()
    a = medium.transmit_frame(Link(0, 1, 1, 6e6), 1500, at=0.0)
    b = medium.transmit_frame(Link(0, 1, 2, 6e6), 1500, at=0.0)
    sim.run_until(1.0)
    assert a.start == b.start == 0.0


def test_same_channel_frames_never_overlap():
    sim, medium = make_medium(record=True)
    rng = np.random.default_rng(11)
    for _ in range(50):
        a, b = sorted(rng.choice(6, size=2, replace=False))
        medium.transmit_frame(Link(int(a), int(b), 1, 6e6), int(rng.integers(40, 1500)), at=float(rng.uniform(0, 0.05)))
    sim.run_until(5.0)
    spans = sorted((t.start, t.end) for t in medium.log)
    assert len(spans) == 50
    for (_, end), (start, _) in zip(spans, spans[1:]):
        assert start >= end - 1e-12


def test_frame_overhead_adds_airtime():
    sim, medium = make_medium(frame_overhead_s=0.001)
    tx = medium.transmit_frame(Link(0, 1, 1, 6e6), 1500, at=0.0)
    sim.run_until(1.0)
    assert tx.end == pytest.approx(0.003)


def test_lossy_link_loses_some_frames():
    sim, medium = make_medium()
    link = Link(0, 1, 1, 6e6, loss_prob=0.5)
    lost, delivered = [], []
    for _ in range(200):
        medium.transmit_frame(link, 100, at=0.0, on_delivered=delivered.append, on_lost=lost.append)
    sim.run_until(10.0)
    assert len(lost) + len(delivered) == 200
    assert 50 < len(lost) < 150
    assert medium.frames_lost == len(lost)


def test_empty_frame_is_rejected():
    _, medium = make_medium()
    with pytest.raises(ValueError):
        medium.transmit_frame(Link(0, 1, 1, 6e6), 0, at=0.0)


def test_aggregated_frame_airtime():
    sim, medium = make_medium()
    tx = medium.transmit_frame(Link(0, 1, 1, 6e6), 1228, at=0.0)
    sim.run_until(1.0)
    assert tx.end - tx.start == pytest.approx(1228 * 8 / 6e6)


def test_request_on_busy_channel_waits_for_release():
    sim, medium = make_medium()
    link = Link(0, 1, 1, 6e6)
    medium.transmit_frame(link, 1_500_000, at=0.0)
    late = medium.transmit_frame(link, 100, at=1.5)
    sim.run_until(5.0)
    assert late.start == pytest.approx(2.0)


def test_links_are_symmetric():
    topo = build_topology([node(0, 0.0, channels=(1, 2)), node(1, 60.0, channels=(2,)), node(2, 120.0)], range_m=120.0)
    for link in topo.links:
        assert link in topo.links_between(link.b, link.a)
        assert topo.link(link.b, link.a, link.channel) is link
