"""Scenario configuration: JSON loading, validation, CLI overrides."""

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigInvalidError

SCENARIO_NAMES = (
    "classify",
    "framebound-sweep",
    "critical-half",
    "kadets-sweep",
    "density-demo",
    "kernel-asymptotic",
    "g0-estimate",
    "fock-consistency",
    "sign-retrieval",
)


@dataclass
class ScenarioConfig:
    """Validated scenario configuration.

    ``seed`` is mandatory so that every run is reproducible; scenario
    specific knobs live in ``options``.
    """

    scenario: str
    seed: int
    out_dir: Path
    a: float = 1.0
    b: float = 0.0
    sequence: dict | None = None
    sizes: tuple = ()
    tolerances: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    threads: int = 1

    def __post_init__(self):
        if self.scenario not in SCENARIO_NAMES:
            raise ConfigInvalidError(f"unknown scenario {self.scenario!r}")
        if self.seed is None:
            raise ConfigInvalidError("a seed is required")
        self.seed = int(self.seed)
        if self.seed < 0:
            raise ConfigInvalidError("seed must be non-negative")
        if not self.a > 0.0:
            raise ConfigInvalidError("a must be > 0")
        self.sizes = tuple(int(m) for m in self.sizes)
        if any(y <= x for x, y in zip(self.sizes, self.sizes[1:])):
            raise ConfigInvalidError("sizes must be increasing")
        for key, val in self.tolerances.items():
            if not val > 0.0:
                raise ConfigInvalidError(f"tolerance {key!r} must be > 0")
        if self.threads < 1:
            raise ConfigInvalidError("threads must be >= 1")
        self.out_dir = Path(self.out_dir)

    def tolerance(self, key: str, default: float) -> float:
        return float(self.tolerances.get(key, default))

    def echo(self) -> dict:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "a": self.a,
            "b": self.b,
            "sequence": self.sequence,
            "sizes": list(self.sizes),
            "tolerances": dict(self.tolerances),
            "options": self.options,
            "threads": self.threads,
        }


def load_config(
    path,
    scenario: str,
    out_dir=None,
    seed=None,
    threads=None,
) -> ScenarioConfig:
    """Load a config file and apply CLI overrides.

    The file may name its scenario; it must then match the CLI argument.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigInvalidError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalidError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigInvalidError("config must be a JSON object")
    named = raw.get("scenario")
    if named is not None and named != scenario:
        raise ConfigInvalidError(
            f"config names scenario {named!r} but {scenario!r} was requested"
        )
    return ScenarioConfig(
        scenario=scenario,
        seed=seed if seed is not None else raw.get("seed"),
        out_dir=Path(out_dir) if out_dir is not None else Path(raw.get("out", "out")),
        a=float(raw.get("a", 1.0)),
        b=float(raw.get("b", 0.0)),
        sequence=raw.get("sequence"),
        sizes=tuple(raw.get("sizes", ())),
        tolerances=dict(raw.get("tolerances", {})),
        options=dict(raw.get("options", {})),
        threads=int(threads if threads is not None else raw.get("threads", 1)),
    )
