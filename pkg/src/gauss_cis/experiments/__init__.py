"""Reproducible desk-scale experiments composing the library modules."""

from .config import SCENARIO_NAMES, ScenarioConfig, load_config
from .runner import ScenarioReport, run_scenario
from .scenarios import SCENARIOS, ScenarioOutcome
from .sign_retrieval import SignRetrievalResult, half_grid, sign_retrieval_check

__all__ = [
    "SCENARIO_NAMES",
    "SCENARIOS",
    "ScenarioConfig",
    "ScenarioOutcome",
    "ScenarioReport",
    "SignRetrievalResult",
    "half_grid",
    "load_config",
    "run_scenario",
    "sign_retrieval_check",
]
