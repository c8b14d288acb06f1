from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from nica_dilations import __version__
from nica_dilations.contracts import get_contract_schema
from nica_dilations.core.config import NumericConfig
from nica_dilations.core.exceptions import ScenarioError
from nica_dilations.scenario.reporting import build_report, report_json, write_report_artifacts
from nica_dilations.scenario.runner import RunContext, exit_code, run_tasks
from nica_dilations.scenario.schemas import Scenario

logger = logging.getLogger(__name__)


def _write_json(obj: dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def load_scenario(path: Path) -> Scenario:
    """Read a JSON or YAML scenario and validate it.

    Raises:
        ScenarioError: unreadable file, malformed JSON/YAML or schema violation
    """
    try:
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() in (".yaml", ".yml"):
            payload = yaml.safe_load(text)
        else:
            payload = json.loads(text)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ScenarioError("scenario must be a mapping")
    try:
        return Scenario.model_validate(payload)
    except ValidationError as exc:
        raise ScenarioError(f"invalid scenario {path}: {exc}") from exc


def _resolve_config(scenario: Scenario, tol: float | None) -> NumericConfig:
    overrides = scenario.tolerances.model_dump(exclude_unset=True)
    if tol is not None:
        overrides["tol"] = tol
    try:
        return NumericConfig.from_env(overrides)
    except ValidationError as exc:
        raise ScenarioError(f"invalid tolerances: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nica-dilations",
        description="Verify truncated minimal isometric Nica-covariant dilations from a scenario file.",
    )
    parser.add_argument("scenario", nargs="?", help="Scenario file (JSON or YAML)")
    parser.add_argument("--out", help="Write the JSON report here instead of stdout")
    parser.add_argument("--markdown", help="Also write a Markdown summary here")
    parser.add_argument("--seed", type=int, help="Override the scenario seed")
    parser.add_argument("--tol", type=float, help="Override the identity tolerance")
    parser.add_argument("--depth", type=int, help="Override the default grid depth")
    parser.add_argument("--quiet", action="store_true", help="Only log errors")
    parser.add_argument("--parallel", action="store_true", help="Run tasks on worker threads")
    parser.add_argument(
        "--schema",
        nargs="?",
        const="scenario",
        choices=["scenario", "report"],
        help="Print the scenario (default) or report JSON schema and exit",
    )
    parser.add_argument("--version", action="version", version=f"nica-dilations {__version__}")
    return parser


def main() -> None:
    parser = build_parser()
    args = parser.parse_args()

    logging.basicConfig(
        level=logging.ERROR if args.quiet else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )

    if args.schema:
        _write_json(get_contract_schema(f"{args.schema}.v1"))
        raise SystemExit(0)

    if not args.scenario:
        parser.print_usage(sys.stderr)
        logger.error("a scenario file is required unless --schema is given")
        raise SystemExit(2)
    if args.depth is not None and args.depth < 0:
        parser.error("--depth must be non-negative")

    try:
        scenario = load_scenario(Path(args.scenario))
        config = _resolve_config(scenario, args.tol)
    except ScenarioError as exc:
        logger.error(str(exc))
        _write_json({"ok": False, "error": {"type": type(exc).__name__, "check": exc.check, "message": str(exc)}})
        raise SystemExit(2) from exc

    seed = scenario.seed if args.seed is None else args.seed
    depth = scenario.depth if args.depth is None else args.depth
    ctx = RunContext(scenario=scenario, config=config, depth=depth, seed=seed)
    records = run_tasks(ctx, parallel=args.parallel)
    code = exit_code(records)
    report = build_report(records, version=__version__, seed=seed, depth=depth, config=config, exit_code=code)

    out = Path(args.out) if args.out else None
    write_report_artifacts(report, out=out, markdown=Path(args.markdown) if args.markdown else None)
    if out is None:
        sys.stdout.write(report_json(report))
    logger.info(f"{report.summary.passed}/{report.summary.tasks} tasks passed; exit {code}")
    raise SystemExit(code)


if __name__ == "__main__":
    main()
