"""
Built-in scenarios.

None of them is a recovered copy of a published setup: node placement,
channels and flow parameters are chosen to have the stated shape.
"""

from typing import Callable

from harness.models import FlowConfig, NodeConfig, RadioConfig, Scenario

DEFAULT_RATE_BPS = 6_000_000.0
PKT_BYTES = 512
HEADER_BYTES = 28
CHANNELS = 2
OFFERED_LOAD = 1.5
TEN_NODE_RATE_BPS = 1_000_000.0


def _grid(
    rows: int,
    cols: int,
    spacing: float,
    channels: list[int],
    rate_bps: float = DEFAULT_RATE_BPS,
) -> list[NodeConfig]:
    nodes = []
    for row in range(rows):
        for col in range(cols):
            nid = row * cols + col
            order = channels if nid % 2 == 0 else list(reversed(channels))
            nodes.append(NodeConfig(
                id=nid,
                position=(col * spacing, row * spacing),
                radios=[RadioConfig(channel=ch, rate_bps=rate_bps) for ch in order],
            ))
    return nodes


def bottleneck_frames_per_s(rate_bps: float = DEFAULT_RATE_BPS) -> float:
    """Single-packet frames one channel can carry per second."""
    return rate_bps / ((PKT_BYTES + HEADER_BYTES) * 8)


def paper_10node() -> Scenario:
    """
    Ten nodes on a 2x5 grid, two 1 Mbit/s radios each on channels 1 and 2.

    Four CBR flows between the grid ends offer 1.5x the single-packet frame
    rate of both channels together once every hop of every flow is counted,
    so queues build up under either protocol and aggregation has full
    units to send.
    """
    routes = [(0, 4, 4), (5, 9, 4), (9, 0, 5), (4, 5, 5)]
    hop_sum = sum(hops for _, _, hops in routes)
    rate = round(OFFERED_LOAD * CHANNELS * bottleneck_frames_per_s(TEN_NODE_RATE_BPS) / hop_sum)
    flows = [
        FlowConfig(id=i, src=src, dst=dst, rate_pps=rate, pkt_bytes=PKT_BYTES,
                   start_s=1.0, stop_s=60.0, jitter_s=0.002)
        for i, (src, dst, _) in enumerate(routes)
    ]
    return Scenario(
        name="paper-10node",
        duration_s=60.0,
        header_bytes=HEADER_BYTES,
        transmission_range_m=120.0,
        nodes=_grid(2, 5, 100.0, [1, 2], TEN_NODE_RATE_BPS),
        flows=flows,
    )


def line_3() -> Scenario:
    """Three collinear nodes on a single channel, one flow end to end."""
    nodes = [
        NodeConfig(id=i, position=(i * 100.0, 0.0), radios=[RadioConfig(channel=1)])
        for i in range(3)
    ]
    return Scenario(
        name="line-3",
        duration_s=10.0,
        transmission_range_m=120.0,
        nodes=nodes,
        flows=[FlowConfig(id=0, src=0, dst=2, rate_pps=200.0, pkt_bytes=PKT_BYTES, start_s=1.0, stop_s=9.0)],
    )


def grid_9() -> Scenario:
    """3x3 grid, two channels, corner-to-corner flows in both directions."""
    corners = [(0, 8), (8, 0), (2, 6), (6, 2)]
    return Scenario(
        name="grid-9",
        duration_s=30.0,
        transmission_range_m=120.0,
        nodes=_grid(3, 3, 100.0, [1, 2]),
        flows=[
            FlowConfig(id=i, src=src, dst=dst, rate_pps=100.0, pkt_bytes=PKT_BYTES, start_s=1.0, stop_s=29.0)
            for i, (src, dst) in enumerate(corners)
        ],
    )


PRESETS: dict[str, Callable[[], Scenario]] = {
    "paper-10node": paper_10node,
    "line-3": line_3,
    "grid-9": grid_9,
}


def preset(name: str) -> Scenario:
    """
    Build a named preset.

    Raises:
        KeyError: If the name is unknown
    """
    if name not in PRESETS:
        raise KeyError(f"Unknown preset: {name}. Available: {', '.join(sorted(PRESETS))}")
    return PRESETS[name]()
