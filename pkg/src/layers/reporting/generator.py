"""
Reporter Module.

Renders check reports as JSON (the stable report schema), CSV tables for
the filtration checks and a console summary.
"""

import json
import os
from typing import List, Optional, Sequence, Union

import pandas as pd
from rich.console import Console
from rich.table import Table
from rich.text import Text

from src.layers.checks.base import PASS, CheckReport

STATUS_STYLE = {"pass": "green", "fail": "red", "error": "yellow"}
STATUS_ICON = {"pass": "✅", "fail": "❌", "error": "⚠️"}


class MultiFormatReporter:
    """Generates reports in requested formats."""

    def __init__(self, console: Optional[Console] = None):
        # stderr keeps stdout free for the JSON report
        self.console = console or Console(stderr=True)

    @staticmethod
    def _path(path: str) -> str:
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        return path

    @staticmethod
    def to_json(reports: Union[CheckReport, Sequence[CheckReport]]) -> str:
        """One object for a single report, an array for several; keys in schema order."""
        if isinstance(reports, CheckReport):
            payload = reports.to_dict()
        else:
            payload = [report.to_dict() for report in reports]
        return json.dumps(payload, indent=4, ensure_ascii=False)

    def write_json(self, reports: Union[CheckReport, Sequence[CheckReport]], path: str) -> str:
        path = self._path(path)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.to_json(reports))
            f.write("\n")
        self.console.print(f"   📄 JSON report saved: {path}")
        return path

    @staticmethod
    def filtration_frame(reports: Sequence[CheckReport]) -> pd.DataFrame:
        """Rows of every filtration report, tagged with N and q0."""
        frames = []
        for report in reports:
            if report.check != "filtration" or report.details is None:
                continue
            rows = report.details.metrics.get("rows", [])
            if not rows:
                continue
            frame = pd.DataFrame(rows)
            frame.insert(0, "q0", report.params.get("q"))
            frame.insert(0, "n", report.params.get("n"))
            frames.append(frame)
        if not frames:
            return pd.DataFrame()
        return pd.concat(frames, ignore_index=True)

    def write_csv(self, reports: Sequence[CheckReport], path: str) -> Optional[str]:
        frame = self.filtration_frame(reports)
        if frame.empty:
            self.console.print("⚠️ No table rows to write; CSV skipped.")
            return None
        path = self._path(path)
        frame.to_csv(path, index=False, encoding='utf-8')
        self.console.print(f"   📄 CSV table saved: {path}")
        return path

    def print_summary(self, reports: List[CheckReport]):
        table = Table(title="Verification Results")
        table.add_column("Check", style="bold")
        table.add_column("N", justify="right")
        table.add_column("Status")
        table.add_column("Time (ms)", justify="right", style="dim")
        table.add_column("Witness")
        for report in reports:
            style = STATUS_STYLE.get(report.status, "white")
            witness = "" if report.status == PASS else _short_witness(report.witness)
            table.add_row(report.check, str(report.params.get("n", "")),
                          Text(report.status, style=style), str(report.elapsed_ms), Text(witness))
        self.console.print(table)
        passed = sum(report.passed for report in reports)
        self.console.print(f"{passed}/{len(reports)} checks passed")


def _short_witness(witness) -> str:
    if isinstance(witness, dict):
        if "failures" in witness and witness["failures"]:
            return str(witness["failures"][0])
        if "message" in witness:
            return str(witness["message"])
    return "" if witness is None else str(witness)
