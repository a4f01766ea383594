"""Accuracy reports and their renderings (aligned text, CSV, markdown)."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .scoring import Mismatch


@dataclass
class CaseResult:
    case_id: str
    accuracy: float
    latency: float | None
    mismatches: list[Mismatch] = field(default_factory=list)
    errored: bool = False
    sap_accuracy: float | None = None
    sap_repairs: int = 0


@dataclass
class AccuracyReport:
    """Aggregated results of one suite run (one model, one language).

    The aggregate accuracy is the arithmetic mean of the per-case
    accuracies; latencies of errored cases are left out of the mean.
    """

    model: str
    language: str
    cases: list[CaseResult]
    sap_enabled: bool = False
    size: str = "-"

    @property
    def case_count(self) -> int:
        return len(self.cases)

    @property
    def mean_accuracy(self) -> float:
        """Mean per-case accuracy, in percent."""
        if not self.cases:
            return 0.0
        return 100.0 * sum(c.accuracy for c in self.cases) / len(self.cases)

    @property
    def mean_sap_accuracy(self) -> float | None:
        if not self.sap_enabled or not self.cases:
            return None
        values = [c.sap_accuracy if c.sap_accuracy is not None else c.accuracy for c in self.cases]
        return 100.0 * sum(values) / len(values)

    @property
    def mean_latency(self) -> float | None:
        latencies = [c.latency for c in self.cases if c.latency is not None and not c.errored]
        if not latencies:
            return None
        return sum(latencies) / len(latencies)

    @property
    def error_count(self) -> int:
        return sum(1 for c in self.cases if c.errored)


def _rows(reports: Sequence[AccuracyReport]) -> tuple[list[str], list[list[str]]]:
    languages: list[str] = []
    for report in reports:
        if report.language not in languages:
            languages.append(report.language)
    sap = any(r.sap_enabled for r in reports)

    header = ["Model", "Size"]
    for lang in languages:
        header.append(f"Accuracy (%) {lang}")
    if sap:
        for lang in languages:
            header.append(f"Accuracy+SAP (%) {lang}")
    for lang in languages:
        header.append(f"Latency (s) {lang}")

    grouped: dict[tuple[str, str], dict[str, AccuracyReport]] = {}
    order: list[tuple[str, str]] = []
    for report in reports:
        key = (report.model, report.size)
        if key not in grouped:
            grouped[key] = {}
            order.append(key)
        grouped[key][report.language] = report

    rows = []
    for model, size in order:
        by_lang = grouped[(model, size)]
        row = [model, size]
        for lang in languages:
            r = by_lang.get(lang)
            row.append("" if r is None else repr(r.mean_accuracy))
        if sap:
            for lang in languages:
                r = by_lang.get(lang)
                value = r.mean_sap_accuracy if r else None
                row.append("" if value is None else repr(value))
        for lang in languages:
            r = by_lang.get(lang)
            value = r.mean_latency if r else None
            row.append("" if value is None else repr(value))
        rows.append(row)
    return header, rows


def render_report(
    reports: AccuracyReport | Sequence[AccuracyReport], format: str = "text"
) -> str:
    """Render one or more suite reports as a table.

    One row per (model, size); paired accuracy/latency columns per language.
    """
    if isinstance(reports, AccuracyReport):
        reports = [reports]
    header, rows = _rows(reports)
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()
    if format == "md":
        lines = ["| " + " | ".join(header) + " |"]
        lines.append("|" + "|".join(" --- " for _ in header) + "|")
        for row in rows:
            lines.append("| " + " | ".join(_pretty(cell) for cell in row) + " |")
        return "\n".join(lines) + "\n"
    if format == "text":
        display = [header] + [[_pretty(cell) for cell in row] for row in rows]
        widths = [max(len(r[i]) for r in display) for i in range(len(header))]
        lines = []
        for r, row in enumerate(display):
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
            if r == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}")


def _pretty(cell: str) -> str:
    try:
        value = float(cell)
    except ValueError:
        return cell
    if value.is_integer():
        return f"{value:.1f}"
    return f"{value:.4g}" if abs(value) < 100 else f"{value:.1f}"


def parse_csv_report(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]
