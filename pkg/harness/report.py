"""
Run reports and their CSV / JSON renderings.
"""

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

from harness.models import Scenario
from metrics.counters import Counters, TimeSeries
from metrics.formulas import LossSummary, ThroughputSummary

logger = logging.getLogger(__name__)

SUMMARY_HEADER = ["metric", "flow_id", "value"]
SERIES_HEADER = ["t_bin_start_s", "protocol", "delivered_bits_per_s", "pdr_cumulative"]

COUNTER_METRICS = [
    "sent",
    "received",
    "duplicates",
    "dropped_queue",
    "dropped_noroute",
    "dropped_hopbudget",
    "dropped_linkloss",
    "in_flight",
    "bytes_delivered",
]


@dataclass
class RunStats:
    """Engine and medium figures of one run."""

    events_processed: int = 0
    frames_sent: int = 0
    frames_lost: int = 0
    frame_bytes_sent: int = 0
    data_units_sent: int = 0
    packets_in_units: int = 0
    payload_bytes_sent: int = 0
    acks_sent: int = 0
    acks_delivered: int = 0
    acks_dropped: int = 0
    retransmissions: int = 0
    max_in_flight: dict[int, int] = field(default_factory=dict)
    strategy: dict[str, float] = field(default_factory=dict)
    runtime_s: float = 0.0

    @property
    def mean_packets_per_unit(self) -> float:
        return self.packets_in_units / self.data_units_sent if self.data_units_sent else 0.0


@dataclass
class Report:
    """Everything a run produced, keyed by flow id (and "all" for totals)."""

    scenario: Scenario
    digest: str
    per_flow: dict[int, Counters]
    total: Counters
    series: TimeSeries
    pdr: dict[int | str, float | None]
    loss: dict[int | str, LossSummary]
    throughput: ThroughputSummary
    flow_throughput_bps: dict[int, float]
    stats: RunStats

    @property
    def protocol(self) -> str:
        return self.scenario.protocol

    @property
    def seed(self) -> int:
        return self.scenario.seed


def format_value(value: object) -> str:
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def summary_rows(report: Report) -> list[list[str]]:
    rows: list[list[str]] = []
    scopes: list[tuple[int | str, Counters]] = list(report.per_flow.items()) + [("all", report.total)]
    for flow_id, counters in scopes:
        for metric in COUNTER_METRICS:
            rows.append([metric, str(flow_id), format_value(getattr(counters, metric))])
        loss = report.loss[flow_id]
        rows.append(["pdr", str(flow_id), format_value(report.pdr[flow_id])])
        rows.append(["loss_count", str(flow_id), format_value(loss.count)])
        rows.append(["loss_ratio", str(flow_id), format_value(loss.ratio)])
        bps = report.throughput.average_bps if flow_id == "all" else report.flow_throughput_bps[flow_id]
        rows.append(["throughput_bps", str(flow_id), format_value(bps)])
    stats = report.stats
    for metric, value in [
        ("control_bytes_sent", report.total.control_bytes_sent),
        ("frames_sent", stats.frames_sent),
        ("frames_lost", stats.frames_lost),
        ("frame_bytes_sent", stats.frame_bytes_sent),
        ("data_units_sent", stats.data_units_sent),
        ("payload_bytes_sent", stats.payload_bytes_sent),
        ("mean_packets_per_unit", stats.mean_packets_per_unit),
        ("acks_sent", stats.acks_sent),
        ("acks_delivered", stats.acks_delivered),
        ("retransmissions", stats.retransmissions),
        ("events_processed", stats.events_processed),
    ]:
        rows.append([metric, "all", format_value(value)])
    return rows


def series_rows(report: Report) -> list[list[str]]:
    rows = []
    cumulative = report.series.cumulative_pdr()
    for i, bps in enumerate(report.throughput.per_bin_bps):
        rows.append([
            format_value(report.series.bin_start(i)),
            report.protocol,
            format_value(bps),
            format_value(cumulative[i]),
        ])
    return rows


def render_csv(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def report_to_dict(report: Report) -> dict:
    """JSON-ready report, including the scenario with every default filled in."""
    return {
        "scenario": report.scenario.model_dump(mode="json"),
        "digest": report.digest,
        "protocol": report.protocol,
        "seed": report.seed,
        "nodes": len(report.scenario.nodes),
        "total": report.total.to_dict(),
        "per_flow": {str(fid): c.to_dict() for fid, c in report.per_flow.items()},
        "pdr": {str(k): v for k, v in report.pdr.items()},
        "loss": {str(k): asdict(v) for k, v in report.loss.items()},
        "throughput_bps": report.throughput.average_bps,
        "series": {
            "bin_width_s": report.series.bin_width,
            "delivered_bits_per_s": report.throughput.per_bin_bps,
            "pdr_cumulative": report.series.cumulative_pdr(),
        },
        "stats": asdict(report.stats) | {"mean_packets_per_unit": report.stats.mean_packets_per_unit},
    }


def write_run_outputs(report: Report, out_dir: str | Path) -> dict[str, Path]:
    """
    Write summary.csv, series.csv and report.json into out_dir.

    Returns:
        Mapping of output kind to written path
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "summary": out / "summary.csv",
        "series": out / "series.csv",
        "report": out / "report.json",
    }
    paths["summary"].write_text(render_csv(SUMMARY_HEADER, summary_rows(report)), encoding="utf-8")
    paths["series"].write_text(render_csv(SERIES_HEADER, series_rows(report)), encoding="utf-8")
    paths["report"].write_text(json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote run outputs to {out}")
    return paths
