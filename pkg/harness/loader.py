"""
Scenario file loading and validation.
"""

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from harness.models import Scenario
from utils.errors import ScenarioError

logger = logging.getLogger(__name__)


def format_validation_error(error: ValidationError) -> str:
    """One line per problem: field path and the violated constraint."""
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "scenario"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    """
    Parse and validate scenario JSON.

    Raises:
        ScenarioError: With line/column context for syntax errors, or the
            field path and constraint for validation errors
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from e
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"{source}: {format_validation_error(e)}") from e


def load_scenario(path: str | Path) -> Scenario:
    """Read a scenario file and fill in every default."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read scenario {path}: {e}") from e
    scenario = parse_scenario(text, str(path))
    logger.info(f"Loaded scenario '{scenario.name}' from {path} ({len(scenario.nodes)} nodes, {len(scenario.flows)} flows)")
    return scenario


def dump_scenario(scenario: Scenario) -> str:
    """Canonical JSON with every default filled in."""
    return json.dumps(scenario.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
