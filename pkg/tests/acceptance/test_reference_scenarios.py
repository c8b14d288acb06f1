"""Bundled reference scenarios run clean and reproduce byte-identical reports."""

import json
import sys
from pathlib import Path

import pytest

from nica_dilations.core.config import NumericConfig
from nica_dilations.scenario import RunContext, run_tasks
from nica_dilations.scenario.cli import load_scenario, main

pytestmark = pytest.mark.slow

SCENARIOS_DIR = Path(__file__).resolve().parents[2] / "scenarios"
SCENARIOS = sorted(SCENARIOS_DIR.glob("*.json"))


def run_cli(monkeypatch, capsys, *args: str) -> tuple[int, str]:
    monkeypatch.setattr(sys, "argv", ["nica-dilations", *args])
    with pytest.raises(SystemExit) as exc_info:
        main()
    return exc_info.value.code, capsys.readouterr().out


def masked(report: dict) -> dict:
    for task in report["tasks"]:
        task.pop("wall_time", None)
    return report


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda path: path.stem)
def test_reference_scenario_passes(monkeypatch, capsys, path):
    code, out = run_cli(monkeypatch, capsys, str(path), "--quiet")
    report = json.loads(out)
    assert code == 0, [task for task in report["tasks"] if task["verdict"] != "pass"]
    assert report["summary"]["failed"] == 0
    assert report["summary"]["errors"] == 0


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda path: path.stem)
def test_reference_reports_are_reproducible(monkeypatch, capsys, path):
    _, first = run_cli(monkeypatch, capsys, str(path), "--quiet")
    _, second = run_cli(monkeypatch, capsys, str(path), "--quiet")
    assert masked(json.loads(first)) == masked(json.loads(second))


def test_seeded_sup_estimates_agree():
    scenario = load_scenario(SCENARIOS_DIR / "scalar_norms.json")
    ctx = RunContext(scenario=scenario, config=NumericConfig(), depth=scenario.depth, seed=scenario.seed)
    records = [record for record in run_tasks(ctx) if record.kind == "norm_estimate"]
    assert len(records) == 2
    for record in records:
        estimate = record.data["estimate"]
        contractive, isometric = estimate["contractive_sup"], estimate["isometric_sup"]
        assert estimate["inequality_holds"]
        assert abs(isometric - contractive) <= 0.05 * max(contractive, isometric)
