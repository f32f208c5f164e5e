"""Process-log (CSV) and check-report (JSON lines) serialization.

Floats are written with repr-level precision (.17g for CSV, shortest
round-trip repr for JSON), so identical runs produce byte-identical files
and every record survives a parse/serialize round trip unchanged.
"""

from __future__ import annotations

import csv
import io
import json

from .errors import ConfigError
from .linalg import det
from .verification import CheckReport, sample_diagnostics

__all__ = [
    "LOG_SCHEMA",
    "LOG_COLUMNS",
    "write_report",
    "read_report",
    "report_line",
    "build_log_rows",
    "write_process_log",
    "read_process_log",
    "summarize_log",
]

LOG_SCHEMA = "duhem-log-1"

LOG_COLUMNS = [
    "t",
    "X1",
    "X2",
    "X3",
    "theta",
    "det_F",
    "psi",
    "eta",
    "delta0",
    "dissipation_residual",
    "b1",
    "b2",
    "b3",
    "r",
    "q_dot_g",
]


def _fmt(x: float) -> str:
    return format(x, ".17g")


# ---- check reports ----------------------------------------------------------


def report_line(report: CheckReport) -> str:
    """One JSON record (fixed key order) for a check report."""
    return json.dumps(
        {
            "check": report.name,
            "samples": report.samples,
            "max_residual": report.max_residual,
            "tolerance": report.tolerance,
            "passed": report.passed,
            "worst_input": report.worst_input,
            "notes": report.notes,
        }
    )


def write_report(reports, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for report in reports:
            fh.write(report_line(report) + "\n")


def read_report(path: str) -> list[CheckReport]:
    reports = []
    with open(path, "r", encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                reports.append(
                    CheckReport(
                        name=rec["check"],
                        samples=rec["samples"],
                        max_residual=rec["max_residual"],
                        tolerance=rec["tolerance"],
                        passed=rec["passed"],
                        worst_input=rec["worst_input"],
                        notes=rec.get("notes", {}),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ConfigError(f"{path}:{ln}: malformed report record: {exc}") from None
    return reports


# ---- process logs -----------------------------------------------------------


def build_log_rows(proc, model, heat, samples) -> list[list[float]]:
    """Flatten process samples into log rows (one per sample, grid order)."""
    rows = []
    for s in samples:
        diag = sample_diagnostics(proc, model, heat, s)
        rows.append([
            s.t,
            s.x_ref.x, s.x_ref.y, s.x_ref.z,
            s.state.theta,
            det(s.state.F),
            s.response.psi,
            s.response.eta,
            diag.delta0,
            diag.dissipation_residual,
            s.b.x, s.b.y, s.b.z,
            s.r,
            diag.qg,
        ])
    return rows


def write_process_log(rows, path: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# schema={LOG_SCHEMA}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(LOG_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def read_process_log(path: str):
    """Parse a process log; returns (columns, rows of floats). Raises
    ConfigError on schema or format violations."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        first = fh.readline().strip()
        if first != f"# schema={LOG_SCHEMA}":
            raise ConfigError(f"{path}: missing or unsupported schema stamp {first!r}")
        reader = csv.reader(io.StringIO(fh.read()))
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path}: missing header row") from None
        if header != LOG_COLUMNS:
            raise ConfigError(f"{path}: unexpected columns {header!r}")
        rows = []
        for ln, row in enumerate(reader, 3):
            if len(row) != len(LOG_COLUMNS):
                raise ConfigError(f"{path}:{ln}: expected {len(LOG_COLUMNS)} fields")
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ConfigError(f"{path}:{ln}: {exc}") from None
    return LOG_COLUMNS, rows


def summarize_log(path: str) -> str:
    """Human-readable per-column summary plus worst-case residual lines."""
    columns, rows = read_process_log(path)
    if not rows:
        raise ConfigError(f"{path}: log contains no samples")
    lines = [f"{len(rows)} samples, {len(columns)} columns"]
    lines.append(f"{'column':22s} {'min':>24s} {'max':>24s} {'mean':>24s}")
    for i, name in enumerate(columns):
        values = [row[i] for row in rows]
        lines.append(
            f"{name:22s} {_fmt(min(values)):>24s} {_fmt(max(values)):>24s} "
            f"{_fmt(sum(values) / len(values)):>24s}"
        )
    delta0 = max(abs(row[columns.index("delta0")]) for row in rows)
    diss = max(row[columns.index("dissipation_residual")] for row in rows)
    qg = max(row[columns.index("q_dot_g")] for row in rows)
    lines.append(f"max |delta0|               = {_fmt(delta0)}")
    lines.append(f"max dissipation residual   = {_fmt(diss)}")
    lines.append(f"max q . g                  = {_fmt(qg)}")
    return "\n".join(lines)
