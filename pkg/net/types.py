"""
Data types for the network model: nodes, radios, links and packets.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class RadioSpec:
    """One radio interface tuned to a channel."""

    channel: int
    rate_bps: float = 6_000_000.0

    def __post_init__(self):
        if self.rate_bps <= 0:
            raise ValueError(f"radio rate must be positive, got {self.rate_bps}")


@dataclass(frozen=True)
class NodeSpec:
    """A mesh node: identifier, position in meters and its radios."""

    id: int
    position: tuple[float, float]
    radios: tuple[RadioSpec, ...] = ()

    def channels(self) -> dict[int, RadioSpec]:
        return {radio.channel: radio for radio in self.radios}


@dataclass(frozen=True)
class Link:
    """
    Undirected link between two nodes on one channel.

    Endpoints are stored with a < b.
    """

    a: int
    b: int
    channel: int
    rate_bps: float
    loss_prob: float = 0.0

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.channel)

    def other(self, node: int) -> int:
        if node == self.a:
            return self.b
        if node == self.b:
            return self.a
        raise ValueError(f"node {node} is not an endpoint of {self.key}")


@dataclass(slots=True)
class Packet:
    """
    A data unit travelling through the mesh.

    `kind` is "data" for application payloads and "ack" for reliable-flow
    acknowledgements. Retransmitted copies share the id of the original.
    """

    id: int
    flow_id: int
    src: int
    dst: int
    size_bytes: int
    created_at: float
    hop_budget: int
    enqueue_timestamp: float = 0.0
    hops_taken: int = 0
    kind: str = "data"
    seq: int = 0
    injection_distance: int | None = None

    @property
    def is_data(self) -> bool:
        return self.kind == "data"
