"""
Report Files
Rendering of CLI reports and atomic file output
"""
import os
import tempfile
from pathlib import Path
from typing import List, Literal

from engine.export import csv_text, json_text
from proph_cli.models import ReproduceReport, WelfareSweepReport
from strategies.models import ThresholdRow

ReportFormat = Literal["csv", "json"]


def write_text_atomic(path: str, text: str) -> str:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return str(target)


def threshold_rows_csv(rows: List[ThresholdRow]) -> str:
    return csv_text(
        ["rule", "k", "i", "ell", "threshold"],
        [
            [row.rule, "" if row.k is None else row.k, "" if row.i is None else row.i, row.ell, repr(row.threshold)]
            for row in rows
        ],
    )


def threshold_rows_json(rows: List[ThresholdRow]) -> str:
    return json_text({"thresholds": [row.model_dump(mode="python") for row in rows]})


def reproduce_csv(report: ReproduceReport) -> str:
    """Margin table; the overall status is repeated on every row."""
    return csv_text(
        ["construction", "ell", "threshold", "utility", "margin", "in_tight_range", "ok", "status"],
        [
            [report.construction, row.ell, repr(row.threshold), repr(row.utility), repr(row.margin),
             row.in_tight_range, row.ok, report.status]
            for row in report.margins
        ],
    )


def welfare_csv(report: WelfareSweepReport) -> str:
    return csv_text(
        ["k", "mode", "spe_welfare", "optimal_welfare", "ratio"],
        [
            [row.k, row.mode, repr(row.spe_welfare), repr(row.optimal_welfare), repr(row.ratio)]
            for row in report.rows
        ],
    )


def model_json(model) -> str:
    return json_text(model.model_dump(mode="python"))
