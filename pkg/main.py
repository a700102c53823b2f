#!/usr/bin/env python3
"""
Mesh forwarding simulator command line.

Usage:
    python main.py run --scenario scenario.json --protocol aal2r --out results/run
    python main.py run --scenario paper-10node --seed 7
    python main.py compare --scenario paper-10node --protocols gsr,aal2r --seeds 10
    python main.py preset line-3 --emit line-3.json

Exit codes: 0 ok, 1 usage, 2 scenario validation, 3 internal invariant failure.
"""

import argparse
import logging
import sys
from pathlib import Path

from harness import PRESETS, __version__, compare, load_scenario, preset, run, write_compare_csv, write_run_outputs
from harness.loader import dump_scenario
from harness.models import Scenario
from utils import configure_logging, load_settings
from utils.errors import InvariantViolation, MeshSimError, ScenarioError, TopologyError, UsageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_INVARIANT = 3


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="meshsim",
        description="Compare GSR forwarding with AAL2R forwarding and aggregation on simulated mesh networks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py run --scenario scenario.json --protocol gsr
  python main.py compare --scenario paper-10node --protocols gsr,aal2r --seeds 10
  python main.py preset paper-10node --emit paper-10node.json
        """
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="Run one scenario and write summary.csv, series.csv and report.json")
    run_parser.add_argument(
        "--scenario",
        required=True,
        help="Scenario JSON file, or the name of a preset"
    )
    run_parser.add_argument("--seed", type=int, help="Override the scenario seed")
    run_parser.add_argument("--protocol", choices=["gsr", "aal2r"], help="Override the scenario protocol")
    run_parser.add_argument("--out", type=str, help="Output directory (default: MESHSIM_OUT_DIR)")

    compare_parser = sub.add_parser("compare", help="Run several protocols over the same seeds")
    compare_parser.add_argument(
        "--scenario",
        required=True,
        help="Scenario JSON file, or the name of a preset"
    )
    compare_parser.add_argument(
        "--protocols",
        type=str,
        default="gsr,aal2r",
        help="Comma-separated protocol list (default: gsr,aal2r)"
    )
    compare_parser.add_argument("--seeds", type=int, help="Number of seeds (default: MESHSIM_COMPARE_SEEDS)")
    compare_parser.add_argument("--out", type=str, help="Output directory (default: MESHSIM_OUT_DIR)")

    preset_parser = sub.add_parser("preset", help="Print or write a built-in scenario")
    preset_parser.add_argument("name", choices=sorted(PRESETS))
    preset_parser.add_argument("--emit", type=str, help="Write the preset scenario JSON to this path")
    return parser


def resolve_scenario(source: str) -> Scenario:
    """A scenario file path, falling back to a preset of that name."""
    if not Path(source).exists() and source in PRESETS:
        return preset(source)
    return load_scenario(source)


def cmd_run(args: argparse.Namespace, out_dir: str) -> None:
    scenario = resolve_scenario(args.scenario).with_overrides(seed=args.seed, protocol=args.protocol)
    report = run(scenario)
    paths = write_run_outputs(report, args.out or out_dir)
    print(f"scenario: {scenario.name} ({len(scenario.nodes)} nodes, {len(scenario.flows)} flows)")
    print(f"protocol: {scenario.protocol}  seed: {scenario.seed}  digest: {report.digest[:12]}")
    print(f"pdr: {report.pdr['all']}")
    print(f"throughput: {report.throughput.average_bps:.1f} bit/s")
    print(f"loss: {report.loss['all'].count} packets")
    print(f"outputs: {paths['summary'].parent}")


def cmd_compare(args: argparse.Namespace, out_dir: str, default_seeds: int, workers: int) -> None:
    scenario = resolve_scenario(args.scenario)
    protocols = args.protocols.split(",")
    result = compare(scenario, protocols, seeds=args.seeds or default_seeds, workers=workers)
    path = write_compare_csv(result, args.out or out_dir)
    for row in result.rows:
        print(f"seed {row.seed:>4} {row.protocol:<6} pdr={row.pdr} throughput={row.throughput_bps:.1f}")
    for name in result.protocols:
        print(f"mean {name:<6} pdr={result.mean_pdr(name)} throughput={result.mean_throughput(name):.1f}")
    if {"gsr", "aal2r"} <= set(result.protocols):
        ordering = result.ordering()
        print(f"aal2r >= gsr: pdr on {ordering['pdr']:.0%} of seeds, throughput on {ordering['throughput_bps']:.0%}")
    print(f"outputs: {path}")


def cmd_preset(args: argparse.Namespace) -> None:
    text = dump_scenario(preset(args.name))
    if args.emit:
        Path(args.emit).write_text(text, encoding="utf-8")
        print(f"Preset {args.name} written to {args.emit}")
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    settings = load_settings()
    configure_logging(settings.log_level)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "run":
            cmd_run(args, settings.out_dir)
        elif args.command == "compare":
            cmd_compare(args, settings.out_dir, settings.compare_seeds, settings.workers)
        else:
            cmd_preset(args)
    except UsageError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (ScenarioError, TopologyError) as e:
        logger.error(f"Invalid scenario: {e}")
        return EXIT_VALIDATION
    except InvariantViolation as e:
        logger.error(f"Invariant violated: {e}")
        return EXIT_INVARIANT
    except MeshSimError as e:
        logger.error(f"Simulation failed: {e}")
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
