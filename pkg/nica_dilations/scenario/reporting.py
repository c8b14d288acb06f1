from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from nica_dilations.core.config import NumericConfig
from nica_dilations.scenario.schemas import (
    EnvironmentRecord,
    Report,
    ReportSummary,
    TaskRecord,
)

TIMING_FIELDS = {"wall_time"}


def _md_list(items: list[str]) -> str:
    if not items:
        return "- (none)"
    return "\n".join(f"- {item}" for item in items)


def canonical_payload(report: Report) -> dict[str, Any]:
    """The report as JSON data with timing fields and the digest removed."""
    payload = report.model_dump(mode="json", exclude={"digest"})
    for task in payload["tasks"]:
        for key in TIMING_FIELDS:
            task.pop(key, None)
    return payload


def report_digest(report: Report) -> str:
    encoded = json.dumps(canonical_payload(report), sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(encoded).hexdigest()


def build_report(
    records: list[TaskRecord],
    *,
    version: str,
    seed: int,
    depth: int,
    config: NumericConfig,
    exit_code: int,
) -> Report:
    summary = ReportSummary(
        tasks=len(records),
        passed=sum(record.verdict == "pass" for record in records),
        failed=sum(record.verdict == "fail" for record in records),
        errors=sum(record.verdict == "error" for record in records),
    )
    report = Report(
        environment=EnvironmentRecord(version=version, seed=seed, depth=depth, tolerances=config),
        tasks=records,
        summary=summary,
        exit_code=exit_code,
    )
    report.digest = report_digest(report)
    return report


def report_json(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def _task_line(record: TaskRecord) -> str:
    if record.error is not None:
        return f"`{record.name}` ({record.kind}): **error** {record.error.type}: {record.error.message}"
    worst = max(record.checks, key=lambda check: check.defect / check.tol if check.tol > 0 else 0.0, default=None)
    detail = f"worst {worst.check} {worst.defect:.3e} / tol {worst.tol:.3e}" if worst else "no checks"
    return f"`{record.name}` ({record.kind}): **{record.verdict}**, {detail}"


def render_markdown(report: Report) -> str:
    env = report.environment
    failed = [
        f"`{record.name}` {check.check}: {check.defect:.3e} > {check.tol:.3e} at {check.witness or '-'}"
        for record in report.tasks
        for check in record.checks
        if not check.passed
    ]
    md = [
        "# Nica Dilation Report",
        "",
        f"**Version**: `{env.version}`",
        f"**Seed**: {env.seed}",
        f"**Depth**: {env.depth}",
        f"**Tolerance**: {env.tolerances.tol:.1e} (PSD floor {env.tolerances.tol_psd:.1e})",
        f"**Exit code**: {report.exit_code}",
        f"**Digest**: `{report.digest}`",
        "",
        "## Tasks",
        "",
        _md_list([_task_line(record) for record in report.tasks]),
        "",
        "## Failed Checks",
        "",
        _md_list(failed),
    ]
    return "\n".join(md) + "\n"


def write_report_artifacts(report: Report, *, out: Path | None, markdown: Path | None) -> dict[str, str]:
    paths: dict[str, str] = {}
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report_json(report))
        paths["report_json"] = str(out)
    if markdown is not None:
        markdown.parent.mkdir(parents=True, exist_ok=True)
        markdown.write_text(render_markdown(report))
        paths["report_md"] = str(markdown)
    return paths
