"""Run scenarios and write deterministic reports.

Reports are always written, even when thresholds fail; only the exit
status reflects the verdict.  CSV bodies are byte-stable across runs of
the same config: floats print with 17 significant digits, rows keep the
scenario's fixed order, and nothing time-dependent enters a CSV (timings
live in report.json only).
"""

import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import UnknownScenarioError
from .config import ScenarioConfig
from .scenarios import SCENARIOS

__all__ = ["ScenarioReport", "run_scenario", "format_cell"]


def format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(format_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass
class ScenarioReport:
    scenario: str
    passed: bool
    summary: dict
    out_dir: Path
    csv_paths: tuple
    elapsed_seconds: float


class _JsonEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, (np.integer,)):
            return int(o)
        if isinstance(o, (np.floating,)):
            return float(o)
        if isinstance(o, (np.bool_,)):
            return bool(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        return super().default(o)


def run_scenario(config: ScenarioConfig) -> ScenarioReport:
    """Execute a scenario and write report.json plus its CSV tables."""
    fn = SCENARIOS.get(config.scenario)
    if fn is None:
        raise UnknownScenarioError(f"no scenario named {config.scenario!r}")
    start = time.perf_counter()
    outcome = fn(config)
    elapsed = time.perf_counter() - start

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_paths = []
    for name, (header, rows) in outcome.tables.items():
        path = out / f"{name}.csv"
        _write_csv(path, header, rows)
        csv_paths.append(path)
    if outcome.plots:
        plot_dir = out / "plotdata"
        plot_dir.mkdir(exist_ok=True)
        for name, (header, rows) in outcome.plots.items():
            path = plot_dir / f"{name}.csv"
            _write_csv(path, header, rows)
            csv_paths.append(path)

    report = {
        "config": config.echo(),
        "passed": outcome.passed,
        "summary": outcome.summary,
        "csv_files": [str(p.relative_to(out)) for p in csv_paths],
        "elapsed_seconds": elapsed,
    }
    (out / "report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True, cls=_JsonEncoder) + "\n",
        encoding="utf-8",
    )
    return ScenarioReport(
        scenario=config.scenario,
        passed=outcome.passed,
        summary=outcome.summary,
        out_dir=out,
        csv_paths=tuple(csv_paths),
        elapsed_seconds=elapsed,
    )
