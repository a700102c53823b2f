"""
One event-driven run of a scenario.
"""

import hashlib
import logging
import time

from forwarding.factory import StrategyFactory, register_builtin_strategies
from harness.loader import dump_scenario
from harness.models import Scenario
from harness.report import Report, RunStats
from metrics.collector import MetricsCollector
from metrics.formulas import check_conservation, packet_loss, pdr, throughput
from net.medium import Medium
from net.network import MeshNetwork
from net.topology import build_topology
from sim.engine import Simulator
from sim.streams import RandomStream
from traffic.manager import TrafficManager
from utils.errors import DropReason, InvariantViolation

logger = logging.getLogger(__name__)


def scenario_digest(scenario: Scenario) -> str:
    return hashlib.sha256(dump_scenario(scenario).encode("utf-8")).hexdigest()


class Simulation:
    """
    Builds the engine, topology, medium, strategy and traffic of a scenario
    and runs it to its horizon.
    """

    def __init__(self, scenario: Scenario, record: bool = False):
        if not StrategyFactory.names():
            register_builtin_strategies()
        self.scenario = scenario
        self.sim = Simulator(keep_trace=record)
        root = RandomStream(scenario.seed)
        self.topology = build_topology(
            scenario.node_specs(),
            scenario.transmission_range_m,
            loss_prob=scenario.medium.link_loss_prob,
        )
        self.medium = Medium(
            self.sim,
            root.fork("loss"),
            frame_overhead_s=scenario.medium.frame_overhead_s,
            record=record,
        )
        self.strategy = StrategyFactory.create(scenario.protocol, **self._strategy_kwargs(root))
        flows = scenario.flow_specs()
        self.metrics = MetricsCollector([f.flow_id for f in flows], scenario.duration_s, scenario.bin_width_s)
        self.network = MeshNetwork(
            self.sim,
            self.topology,
            self.medium,
            self.strategy,
            mtu_bytes=scenario.mtu_bytes,
            queue_capacity=scenario.queue_capacity_pkts,
            on_drop=self._on_drop,
            record=record,
        )
        self.traffic = TrafficManager(self.sim, self.network, self.metrics, flows, root.fork("traffic"))
        self.network.on_delivery = self.traffic.on_delivery

    def _strategy_kwargs(self, root: RandomStream) -> dict:
        frame = self.scenario.aal2r_config()
        if self.scenario.protocol == "gsr":
            return {"config": self.scenario.gsr_config(), "frame": frame, "stream": root.fork("gsr")}
        return {"config": frame}

    def _on_drop(self, packet, reason: DropReason) -> None:
        self.metrics.on_dropped(packet, reason)

    def _schedule_link_events(self) -> None:
        for event in sorted(self.scenario.link_events, key=lambda e: e.time_s):
            self.sim.schedule(
                event.time_s,
                self.network.set_link_state,
                event.a,
                event.b,
                event.channel,
                event.up,
                label="link-event",
            )

    def run(self) -> Report:
        """
        Execute the scenario.

        Raises:
            InvariantViolation: If packet accounting does not balance
        """
        scenario = self.scenario
        started = time.perf_counter()
        logger.info(f"Running '{scenario.name}' protocol={scenario.protocol} seed={scenario.seed} for {scenario.duration_s}s")
        self.network.start()
        self.traffic.start()
        self._schedule_link_events()
        self.sim.run_until(scenario.duration_s)
        totals = self.metrics.finalize(control_bytes_sent=self.network.control_bytes_sent)

        present = self.network.data_packets_in_network()
        live = self.metrics.live_copies()
        if present != live:
            raise InvariantViolation(f"{present} data copies in the network but metrics track {live}")
        for flow_id, counters in totals.per_flow.items():
            check_conservation(counters, f"flow {flow_id}")
        check_conservation(totals.total)
        if totals.routing_errors:
            raise InvariantViolation(f"{totals.routing_errors} packets reached the wrong sink")

        stats = RunStats(
            events_processed=self.sim.processed,
            frames_sent=self.medium.frames_sent,
            frames_lost=self.medium.frames_lost,
            frame_bytes_sent=self.medium.frame_bytes_sent,
            data_units_sent=self.network.units_sent,
            packets_in_units=self.network.packets_sent,
            payload_bytes_sent=self.network.payload_bytes_sent,
            acks_sent=totals.acks_sent,
            acks_delivered=totals.acks_delivered,
            acks_dropped=totals.acks_dropped,
            max_in_flight={fid: r.max_in_flight for fid, r in sorted(self.traffic.reliable.items())},
            retransmissions=sum(r.retransmissions for r in self.traffic.reliable.values()),
            strategy=self.strategy.stats(),
            runtime_s=time.perf_counter() - started,
        )
        report = Report(
            scenario=scenario,
            digest=scenario_digest(scenario),
            per_flow=totals.per_flow,
            total=totals.total,
            series=totals.series,
            pdr={fid: pdr(c) for fid, c in totals.per_flow.items()} | {"all": pdr(totals.total)},
            loss={fid: packet_loss(c) for fid, c in totals.per_flow.items()} | {"all": packet_loss(totals.total)},
            throughput=throughput(totals.total, scenario.duration_s, totals.series),
            flow_throughput_bps={fid: c.bytes_delivered * 8 / scenario.duration_s for fid, c in totals.per_flow.items()},
            stats=stats,
        )
        logger.info(
            f"Finished '{scenario.name}' protocol={scenario.protocol} seed={scenario.seed}: "
            f"pdr={report.pdr['all']} throughput={report.throughput.average_bps:.1f} bit/s "
            f"in {stats.runtime_s:.2f}s wall"
        )
        return report


def run(scenario: Scenario, record: bool = False) -> Report:
    """Run a scenario and return its report."""
    return Simulation(scenario, record=record).run()
