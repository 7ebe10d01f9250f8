"""Structured run reports with deterministic JSON, CSV, and text renderings.

A report is plain data: a command name, the configuration that produced
it, named scalars, named tables, warnings, and a status.  Serialization
is deterministic for identical content: JSON keys are sorted, floats use
their shortest round-trip form, and nothing records wall-clock time.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .exact import format_rational

FORMATS = ("json", "csv", "text")


def plain(value):
    """Coerce a cell to a JSON-stable primitive."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    item = getattr(value, "item", None)
    if callable(item):
        return plain(item())
    return str(value)


@dataclass
class Table:
    name: str
    columns: List[str]
    rows: List[List[object]]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "columns": list(self.columns),
            "rows": [[plain(c) for c in row] for row in self.rows],
        }


@dataclass
class Report:
    command: str
    config: Dict[str, object] = field(default_factory=dict)
    scalars: Dict[str, object] = field(default_factory=dict)
    tables: List[Table] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    status: str = "ok"

    def add_scalar(self, name: str, value) -> None:
        self.scalars[name] = value

    def add_table(self, name: str, columns: Sequence[str],
                  rows: Sequence[Sequence[object]]) -> Table:
        table = Table(name, list(columns), [list(r) for r in rows])
        self.tables.append(table)
        return table

    def add_warning(self, message: str) -> None:
        self.warnings.append(str(message))

    def fail(self) -> None:
        self.status = "fail"

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "config": {k: plain(v) for k, v in self.config.items()},
            "scalars": {k: plain(v) for k, v in self.scalars.items()},
            "tables": [t.to_json() for t in self.tables],
            "warnings": list(self.warnings),
            "status": self.status,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_csv_text(self) -> str:
        """One CSV stream; metadata rides in '#'-prefixed comment rows."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"# command {self.command}"])
        for key in sorted(self.config):
            writer.writerow([f"# config {key}", plain(self.config[key])])
        for key in sorted(self.scalars):
            writer.writerow([f"# scalar {key}", plain(self.scalars[key])])
        for message in self.warnings:
            writer.writerow([f"# warning {message}"])
        for table in self.tables:
            writer.writerow([])
            writer.writerow([f"# table {table.name}"])
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([plain(c) for c in row])
        writer.writerow([])
        writer.writerow([f"# status {self.status}"])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key in sorted(self.config):
            lines.append(f"config {key}: {plain(self.config[key])}")
        for key in sorted(self.scalars):
            lines.append(f"{key}: {plain(self.scalars[key])}")
        for table in self.tables:
            lines.append("")
            lines.append(f"[{table.name}]")
            cells = [[str(c) for c in table.columns]]
            for row in table.rows:
                cells.append(["" if c is None else str(plain(c)) for c in row])
            widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
            for r in cells:
                lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
        if self.warnings:
            lines.append("")
            for message in self.warnings:
                lines.append(f"warning: {message}")
        lines.append("")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"


def render_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json_text()
    if fmt == "csv":
        return report.to_csv_text()
    if fmt == "text":
        return report.to_text()
    raise ValueError(f"unknown format {fmt!r}; choose one of {FORMATS}")


def write_report(report: Report, fmt: str, out: Optional[str] = None) -> str:
    """Render and deliver a report; returns the rendered text."""
    text = render_report(report, fmt)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
    return text
