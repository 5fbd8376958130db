"""CSV emission for raw trial records and per-(n, method) summaries."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .experiment import SummaryRow, TrialRecord

RAW_COLUMNS = ("trial", "n", "method", "chosen", "gen_error", "scale", "g_size", "f_size", "thm2_rhs", "thm2_violated")
SUMMARY_COLUMNS = (
    "n",
    "method",
    "mean_gen_error",
    "stderr_gen_error",
    "mean_scale",
    "mean_f_size",
    "thm2_violation_rate",
)


def fmt(value) -> str:
    """Render one CSV cell; None and NaN become empty cells."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, ".17g")
    return str(value)


def raw_rows(records: Iterable[TrialRecord]) -> list[list[str]]:
    ordered = sorted(records, key=lambda r: (r.trial_index, r.n, r.method))
    return [
        [
            fmt(r.trial_index),
            fmt(r.n),
            r.method,
            fmt(r.chosen),
            fmt(r.gen_error),
            fmt(r.scale),
            fmt(r.g_size),
            fmt(r.f_size),
            fmt(r.thm2_rhs),
            fmt(r.thm2_violated),
        ]
        for r in ordered
    ]


def summary_rows(rows: Sequence[SummaryRow]) -> list[list[str]]:
    return [
        [
            fmt(r.n),
            r.method,
            fmt(r.mean_gen_error),
            fmt(r.stderr_gen_error),
            fmt(r.mean_scale),
            fmt(r.mean_f_size),
            fmt(r.thm2_violation_rate),
        ]
        for r in sorted(rows, key=lambda r: (r.n, r.method))
    ]


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    Path(path).write_text(render_csv(header, rows), encoding="utf-8")


def write_raw_csv(path: Path, records: Iterable[TrialRecord]) -> None:
    write_csv(path, RAW_COLUMNS, raw_rows(records))


def write_summary_csv(path: Path, rows: Sequence[SummaryRow]) -> None:
    write_csv(path, SUMMARY_COLUMNS, summary_rows(rows))


def aligned_table(header: Sequence[str], rows: Sequence[Sequence[str]], title: Optional[str] = None) -> str:
    rows = [[str(c) if str(c) != "" else "-" for c in row] for row in rows]
    widths = [max(len(c) for c in col) for col in zip(header, *rows)]
    lines = [title] if title else []
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for row in rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"
