"""
Report Export
CSV (agent, utility, std_error) and JSON documents for GameReport
"""
import csv
import io
import json
import math
from typing import Any, Dict, List, Sequence

from engine.models import GameReport


def csv_text(header: Sequence[str], rows: List[Sequence[Any]]) -> str:
    """Deterministic CSV text with '\\n' line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def finite_json(value: Any) -> Any:
    """Replace non-finite floats with the strings "inf", "-inf" and "nan"; pydantic parses them back."""
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {key: finite_json(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [finite_json(item) for item in value]
    return value


def json_text(document: Dict[str, Any]) -> str:
    """Deterministic, strictly standard JSON text."""
    return json.dumps(finite_json(document), indent=2, sort_keys=True, allow_nan=False) + "\n"


def game_report_csv(report: GameReport) -> str:
    rows = [
        [agent + 1, repr(utility), repr(std_error)]
        for agent, (utility, std_error) in enumerate(zip(report.per_agent_utility, report.std_errors))
    ]
    return csv_text(["agent", "utility", "std_error"], rows)


def game_report_json(report: GameReport) -> str:
    return json_text(report.model_dump(mode="python"))
