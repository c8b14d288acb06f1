"""Scenario files, the task runner and verification reports."""

from nica_dilations.scenario import schemas
from nica_dilations.scenario.reporting import build_report, render_markdown, report_digest
from nica_dilations.scenario.runner import RunContext, exit_code, run_task, run_tasks
from nica_dilations.scenario.schemas import Report, Scenario, TaskRecord

__all__ = [
    "schemas",
    "Scenario",
    "Report",
    "TaskRecord",
    "RunContext",
    "run_task",
    "run_tasks",
    "exit_code",
    "build_report",
    "report_digest",
    "render_markdown",
]
