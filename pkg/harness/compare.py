"""
Paired multi-seed comparison of forwarding protocols.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import fmean

from forwarding.factory import StrategyFactory, register_builtin_strategies
from harness.models import Scenario
from harness.report import format_value, render_csv
from harness.simulation import run
from utils.errors import UsageError

logger = logging.getLogger(__name__)

COMPARE_HEADER = ["seed", "protocol", "pdr", "throughput_bps", "loss_count", "control_bytes"]


@dataclass(frozen=True)
class CompareRow:
    seed: int
    protocol: str
    pdr: float | None
    throughput_bps: float
    loss_count: int
    control_bytes: int
    packets_per_unit: float
    runtime_s: float = 0.0


@dataclass
class CompareReport:
    """Per-seed results of every protocol on the same scenario and seeds."""

    scenario_name: str
    protocols: list[str]
    seeds: list[int]
    rows: list[CompareRow] = field(default_factory=list)

    def rows_for(self, protocol: str) -> list[CompareRow]:
        return [row for row in self.rows if row.protocol == protocol]

    def pairs(self, first: str, second: str) -> list[tuple[int, CompareRow, CompareRow]]:
        """(seed, first row, second row) for every seed, in seed order."""
        a = {row.seed: row for row in self.rows_for(first)}
        b = {row.seed: row for row in self.rows_for(second)}
        return [(seed, a[seed], b[seed]) for seed in self.seeds if seed in a and seed in b]

    def mean_pdr(self, protocol: str) -> float | None:
        values = [row.pdr for row in self.rows_for(protocol) if row.pdr is not None]
        return fmean(values) if values else None

    def mean_throughput(self, protocol: str) -> float:
        values = [row.throughput_bps for row in self.rows_for(protocol)]
        return fmean(values) if values else 0.0

    def fraction_at_least(self, better: str, worse: str, metric: str) -> float | None:
        """Share of seeds where `better` scores at least as high as `worse` on metric."""
        pairs = self.pairs(better, worse)
        if not pairs:
            return None
        held = sum(1 for _, b, w in pairs if (getattr(b, metric) or 0.0) >= (getattr(w, metric) or 0.0))
        return held / len(pairs)

    def ordering(self) -> dict[str, float | None]:
        return {
            "pdr": self.fraction_at_least("aal2r", "gsr", "pdr"),
            "throughput_bps": self.fraction_at_least("aal2r", "gsr", "throughput_bps"),
        }


def normalize_protocols(protocols: list[str]) -> list[str]:
    """
    Drop duplicates (keeping first occurrence) and check every name.

    Raises:
        UsageError: If the list is empty or names an unknown protocol
    """
    if not StrategyFactory.names():
        register_builtin_strategies()
    cleaned = [p.strip().lower() for p in protocols if p.strip()]
    if not cleaned:
        raise UsageError("compare needs at least one protocol")
    unique = list(dict.fromkeys(cleaned))
    if len(unique) != len(cleaned):
        logger.warning(f"Duplicate protocols in {cleaned}; comparing {unique}")
    unknown = [p for p in unique if p not in StrategyFactory.names()]
    if unknown:
        raise UsageError(f"Unknown protocol(s): {', '.join(unknown)}")
    return unique


def _run_one(scenario: Scenario, protocol: str, seed: int) -> CompareRow:
    report = run(scenario.with_overrides(protocol=protocol, seed=seed))
    return CompareRow(
        seed=seed,
        protocol=protocol,
        pdr=report.pdr["all"],
        throughput_bps=report.throughput.average_bps,
        loss_count=report.loss["all"].count,
        control_bytes=report.total.control_bytes_sent,
        packets_per_unit=report.stats.mean_packets_per_unit,
        runtime_s=report.stats.runtime_s,
    )


def compare(scenario: Scenario, protocols: list[str], seeds: int = 10, workers: int = 1) -> CompareReport:
    """
    Run every protocol on seeds scenario.seed, scenario.seed + 1, ...

    Args:
        scenario: Base scenario; its protocol and seed fields are overridden
        protocols: Protocol names; duplicates are dropped with a warning
        seeds: Number of consecutive seeds
        workers: Parallel worker processes (1 runs in-process)

    Raises:
        UsageError: On an empty protocol list or a non-positive seed count
    """
    names = normalize_protocols(protocols)
    if seeds < 1:
        raise UsageError("seed count must be at least 1")
    seed_list = [scenario.seed + i for i in range(seeds)]
    jobs = [(protocol, seed) for seed in seed_list for protocol in names]
    logger.info(f"Comparing {names} on '{scenario.name}' over {seeds} seeds ({len(jobs)} runs, {workers} workers)")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_one, scenario, protocol, seed) for protocol, seed in jobs]
            rows = [f.result() for f in futures]
    else:
        rows = [_run_one(scenario, protocol, seed) for protocol, seed in jobs]

    report = CompareReport(scenario_name=scenario.name, protocols=names, seeds=seed_list, rows=rows)
    for name in names:
        logger.info(
            f"{name}: mean pdr={report.mean_pdr(name)} mean throughput={report.mean_throughput(name):.1f} bit/s"
        )
    if {"gsr", "aal2r"} <= set(names):
        ordering = report.ordering()
        logger.info(f"aal2r >= gsr on pdr for {ordering['pdr']:.0%} of seeds, on throughput for {ordering['throughput_bps']:.0%}")
    return report


def compare_rows(report: CompareReport) -> list[list[str]]:
    return [
        [str(row.seed), row.protocol, format_value(row.pdr), format_value(row.throughput_bps),
         str(row.loss_count), str(row.control_bytes)]
        for row in report.rows
    ]


def write_compare_csv(report: CompareReport, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "compare.csv"
    path.write_text(render_csv(COMPARE_HEADER, compare_rows(report)), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path
