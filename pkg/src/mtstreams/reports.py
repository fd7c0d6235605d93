"""Render campaign aggregates as markdown, CSV, or JSON tables.

Three tables mirror the full-scale reference report shapes: `summary`
(suspect counts per technique and mode), `histogram` (failed-test counts
over suspect statuses), and `pertest` (per-test failure frequency, sorted
descending). All renderings come from the same aggregates, in the same
order, so the numbers agree across formats byte-for-byte deterministically.
"""
from __future__ import annotations

import csv
import io
import json

from mtstreams.campaign import (
    DEFAULT_EXPECTED_FAIL_IDS,
    CampaignReport,
    failure_histogram,
    per_test_frequency,
    technique_summary,
)

TABLES = ("summary", "histogram", "pertest")


def summary_rows(creport: CampaignReport, expected_fail_ids) -> list[dict]:
    summary = technique_summary(creport, expected_fail_ids)
    return [
        {
            "technique": technique,
            "mode": mode,
            "statuses": total,
            "suspects": suspects,
            "fraction": fraction,
        }
        for (technique, mode), (suspects, total, fraction) in summary.items()
    ]


def histogram_rows(creport: CampaignReport, expected_fail_ids) -> list[dict]:
    keys = sorted({(r.technique, r.mode) for r in creport.reports})
    rows = []
    for technique, mode in keys:
        hist = failure_histogram(creport, expected_fail_ids, technique=technique, mode=mode)
        rows.extend(
            {"technique": technique, "mode": mode, "n_failed": n, "count": c}
            for n, c in hist.items()
        )
    return rows


def pertest_rows(creport: CampaignReport) -> list[dict]:
    freq = per_test_frequency(creport)
    rows = [
        {"test_id": test_id, "technique": technique, "mode": mode, "fraction": fraction}
        for test_id, by_key in freq.items()
        for (technique, mode), fraction in by_key.items()
    ]
    rows.sort(key=lambda r: (-r["fraction"], r["test_id"], r["technique"], r["mode"]))
    return rows


def _display(row: dict) -> dict:
    out = dict(row)
    if "fraction" in out:
        out["fraction"] = f"{100.0 * out['fraction']:.2f}%"
    return out


def _md_table(headers: list[str], rows: list[dict]) -> str:
    cells = [[str(_display(r)[h]) for h in headers] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h) for i, h in enumerate(headers)]
    def line(values: list[str]) -> str:
        return "| " + " | ".join(v.ljust(w) for v, w in zip(values, widths)) + " |"
    parts = [line(headers), line(["-" * w for w in widths])]
    parts.extend(line(c) for c in cells)
    return "\n".join(parts) + "\n"


def _csv_table(name: str, headers: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["table"] + headers)
    for r in rows:
        disp = _display(r)
        writer.writerow([name] + [disp[h] for h in headers])
    return buf.getvalue()


_TABLE_HEADERS = {
    "summary": ["technique", "mode", "statuses", "suspects", "fraction"],
    "histogram": ["technique", "mode", "n_failed", "count"],
    "pertest": ["test_id", "technique", "mode", "fraction"],
}

_TABLE_TITLES = {
    "summary": "Suspect statuses per technique and mode",
    "histogram": "Failed-test histogram over suspect statuses",
    "pertest": "Per-test failure frequency (descending)",
}


def render_report(
    creport: CampaignReport,
    tables: list[str],
    fmt: str,
    expected_fail_ids=DEFAULT_EXPECTED_FAIL_IDS,
) -> str:
    """Requested tables in one deterministic string ('md', 'csv', or 'json')."""
    unknown = [t for t in tables if t not in TABLES]
    if unknown:
        raise ValueError(f"unknown tables: {unknown}; choose from {TABLES}")
    builders = {
        "summary": lambda: summary_rows(creport, expected_fail_ids),
        "histogram": lambda: histogram_rows(creport, expected_fail_ids),
        "pertest": lambda: pertest_rows(creport),
    }
    built = {name: builders[name]() for name in tables}
    if fmt == "json":
        return json.dumps(built, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return "".join(_csv_table(name, _TABLE_HEADERS[name], built[name]) for name in tables)
    if fmt == "md":
        parts = []
        for name in tables:
            parts.append(f"## {_TABLE_TITLES[name]}\n")
            parts.append(_md_table(_TABLE_HEADERS[name], built[name]))
        return "\n".join(parts)
    raise ValueError(f"unknown format {fmt!r}; choose from md, csv, json")
