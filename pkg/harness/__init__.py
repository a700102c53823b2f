"""
Experiment harness: scenario files, presets, runs and comparisons.
"""

from harness.compare import CompareReport, CompareRow, compare, write_compare_csv
from harness.loader import dump_scenario, load_scenario, parse_scenario
from harness.models import Scenario
from harness.presets import PRESETS, preset
from harness.report import Report, RunStats, write_run_outputs
from harness.simulation import Simulation, run, scenario_digest

__version__ = "1.0.0"

__all__ = [
    'CompareReport',
    'CompareRow',
    'compare',
    'write_compare_csv',
    'dump_scenario',
    'load_scenario',
    'parse_scenario',
    'Scenario',
    'PRESETS',
    'preset',
    'Report',
    'RunStats',
    'write_run_outputs',
    'Simulation',
    'run',
    'scenario_digest',
]
