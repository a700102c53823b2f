"""
Scenario schema: pydantic models for experiment input files.
"""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from forwarding.aggregation import Aal2rConfig
from net.topology import RANGE_EPSILON
from net.types import NodeSpec, RadioSpec
from routing.gsr import GsrConfig
from traffic.flows import FlowSpec
from utils.errors import ScenarioError

SCHEMA_VERSION = 1


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RadioConfig(StrictModel):
    channel: int = Field(ge=0)
    rate_bps: float = Field(default=6_000_000.0, gt=0)


class NodeConfig(StrictModel):
    id: int = Field(ge=0)
    position: tuple[float, float]
    radios: list[RadioConfig] = Field(min_length=1)


class FlowConfig(StrictModel):
    id: int = Field(ge=0)
    src: int
    dst: int
    kind: Literal["cbr", "reliable"] = "cbr"
    rate_pps: float = Field(default=100.0, gt=0)
    pkt_bytes: int = Field(default=512, gt=0)
    start_s: float = Field(default=1.0, ge=0)
    stop_s: float
    window: int = Field(default=8, ge=1)
    rto_initial_s: float = Field(default=1.0, gt=0)
    jitter_s: float = Field(default=0.0, ge=0)


class GsrSettings(StrictModel):
    update_interval_s: float = Field(default=1.0, gt=0)


class Aal2rSettings(StrictModel):
    queue_priority: Literal["oldest_head", "avg_age"] = "oldest_head"
    hold_time_s: float = Field(default=0.0, ge=0)


class MediumSettings(StrictModel):
    frame_overhead_s: float = Field(default=0.0, ge=0)
    link_loss_prob: float = Field(default=0.0, ge=0, le=1)


class LinkEventConfig(StrictModel):
    time_s: float = Field(ge=0)
    a: int
    b: int
    channel: int
    up: bool


class Scenario(StrictModel):
    """A complete, validated experiment description."""

    schema_version: Literal[1] = SCHEMA_VERSION
    name: str = "scenario"
    duration_s: float = Field(gt=0)
    seed: int = Field(default=1, ge=0, lt=2**64)
    protocol: Literal["gsr", "aal2r"] = "aal2r"
    mtu_bytes: int = Field(default=1500, gt=0)
    header_bytes: int = Field(default=28, ge=0)
    transmission_range_m: float = Field(default=120.0, gt=0)
    queue_capacity_pkts: int = Field(default=50, ge=1)
    bin_width_s: float = Field(default=1.0, gt=0)
    nodes: list[NodeConfig] = Field(min_length=1)
    flows: list[FlowConfig] = Field(default_factory=list)
    gsr: GsrSettings = Field(default_factory=GsrSettings)
    aal2r: Aal2rSettings = Field(default_factory=Aal2rSettings)
    medium: MediumSettings = Field(default_factory=MediumSettings)
    link_events: list[LinkEventConfig] = Field(default_factory=list)

    @model_validator(mode="after")
    def cross_validate(self) -> "Scenario":
        if self.header_bytes >= self.mtu_bytes:
            raise ValueError(f"header_bytes ({self.header_bytes}) must be less than mtu_bytes ({self.mtu_bytes})")
        ids = [node.id for node in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError(f"nodes: duplicate node id in {ids}")
        for node in self.nodes:
            channels = [radio.channel for radio in node.radios]
            if len(set(channels)) != len(channels):
                raise ValueError(f"nodes: node {node.id} has two radios on one channel")
        known = set(ids)
        max_payload = self.mtu_bytes - self.header_bytes
        flow_ids: set[int] = set()
        for flow in self.flows:
            where = f"flows[{flow.id}]"
            if flow.id in flow_ids:
                raise ValueError(f"{where}: duplicate flow id")
            flow_ids.add(flow.id)
            if flow.src not in known or flow.dst not in known:
                raise ValueError(f"{where}: src/dst must reference existing nodes")
            if flow.src == flow.dst:
                raise ValueError(f"{where}: src and dst must differ")
            if flow.pkt_bytes > max_payload:
                raise ValueError(f"{where}.pkt_bytes: {flow.pkt_bytes} exceeds mtu - header = {max_payload}")
            if not flow.start_s < flow.stop_s <= self.duration_s:
                raise ValueError(f"{where}: need start_s < stop_s <= duration_s")
        by_id = {node.id: node for node in self.nodes}
        for i, event in enumerate(self.link_events):
            where = f"link_events[{i}]"
            if event.a not in known or event.b not in known:
                raise ValueError(f"{where}: unknown node in {event.a}-{event.b}")
            if event.time_s > self.duration_s:
                raise ValueError(f"{where}.time_s: beyond duration_s")
            first, second = by_id[event.a], by_id[event.b]
            in_range = math.dist(first.position, second.position) <= self.transmission_range_m + RANGE_EPSILON
            shared = {r.channel for r in first.radios} & {r.channel for r in second.radios}
            if event.a == event.b or not in_range or event.channel not in shared:
                raise ValueError(f"{where}: no link between {event.a} and {event.b} on channel {event.channel}")
        return self

    def with_overrides(self, **changes: object) -> "Scenario":
        """A re-validated copy with some fields replaced."""
        data = self.model_dump()
        data.update({key: value for key, value in changes.items() if value is not None})
        try:
            return Scenario.model_validate(data)
        except ValidationError as e:
            raise ScenarioError(f"invalid override: {e.errors()[0]['msg']}") from e

    def with_duration(self, duration_s: float) -> "Scenario":
        """
        A copy with a new horizon. Flows are clipped to it; flows and link
        events that would start after it are left out.
        """
        flows = []
        for flow in self.flows:
            stop = min(flow.stop_s, duration_s)
            if flow.start_s < stop:
                flows.append(flow.model_copy(update={"stop_s": stop}).model_dump())
        events = [e.model_dump() for e in self.link_events if e.time_s <= duration_s]
        return self.with_overrides(duration_s=duration_s, flows=flows, link_events=events)

    def node_specs(self) -> list[NodeSpec]:
        return [
            NodeSpec(
                id=node.id,
                position=node.position,
                radios=tuple(RadioSpec(r.channel, r.rate_bps) for r in node.radios),
            )
            for node in self.nodes
        ]

    def flow_specs(self) -> list[FlowSpec]:
        return [
            FlowSpec(
                flow_id=flow.id,
                src=flow.src,
                dst=flow.dst,
                kind=flow.kind,
                rate_pps=flow.rate_pps,
                pkt_bytes=flow.pkt_bytes,
                start_s=flow.start_s,
                stop_s=flow.stop_s,
                window=flow.window,
                rto_initial_s=flow.rto_initial_s,
                jitter_s=flow.jitter_s,
            )
            for flow in self.flows
        ]

    def aal2r_config(self) -> Aal2rConfig:
        return Aal2rConfig(
            mtu_bytes=self.mtu_bytes,
            header_bytes=self.header_bytes,
            queue_priority=self.aal2r.queue_priority,
            hold_time_s=self.aal2r.hold_time_s,
        )

    def gsr_config(self) -> GsrConfig:
        return GsrConfig(update_interval_s=self.gsr.update_interval_s)
