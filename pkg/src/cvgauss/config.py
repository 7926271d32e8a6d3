"""Experiment configuration: YAML in, validated ExperimentConfig out.

Structure is enforced by a JSON schema (additionalProperties: false, so
typos in key names fail loudly); cross-field rules that a schema cannot
express live in _semantic_checks. Physical validity of the configured
state is deliberately a runtime concern, not a config concern.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
import yaml

from .errors import ConfigError
from .recipes import validate_recipe

ANALYSES = ("purity", "mixedness", "entanglement", "region",
            "critical_efficiency", "reid_drummond", "fidelity")
DEFAULT_ANALYSES = ["purity", "mixedness", "entanglement", "region",
                    "critical_efficiency", "reid_drummond"]
FORMATS = ("json", "csv")


def load_schema(name: str) -> dict:
    text = resources.files("cvgauss").joinpath("schemas", name).read_text()
    return json.loads(text)


@dataclass
class ExperimentConfig:
    seed: int = 0
    efficiency: float = 1.0
    shots: int = 20000
    analyses: list[str] = field(default_factory=lambda: list(DEFAULT_ANALYSES))
    state: list | None = None
    reference: list | None = None
    oracle_check: bool = False
    oracle_cutoff: int | None = None
    estimate_delta: bool = False
    reconstruct_variance: bool = False
    offdiagonal_mode: int | None = None
    sweep: dict | None = None
    raw: dict = field(default_factory=dict)

    def require_state(self) -> list:
        if self.state is None:
            raise ConfigError("this command needs a 'state' recipe in the config")
        return self.state

    def require_sweep(self) -> dict:
        if self.sweep is None:
            raise ConfigError("this command needs a 'sweep' block in the config")
        return self.sweep


def _grid_checks(name: str, grid: dict) -> None:
    if grid["stop"] < grid["start"]:
        raise ConfigError(f"sweep.{name}: stop must be >= start")


def _semantic_checks(cfg: ExperimentConfig) -> None:
    n_state = validate_recipe(cfg.state) if cfg.state is not None else None
    n_ref = validate_recipe(cfg.reference) if cfg.reference is not None else None

    if "fidelity" in cfg.analyses:
        if cfg.reference is None or cfg.state is None:
            raise ConfigError("the fidelity analysis needs both 'state' and 'reference'")
        if n_state != 1 or n_ref != 1:
            raise ConfigError("fidelity routes are defined for single-mode states")

    two_mode_only = [("sampling.estimate_delta", cfg.estimate_delta),
                     ("sampling.reconstruct_variance", cfg.reconstruct_variance)]
    for label, enabled in two_mode_only:
        if enabled and n_state != 2:
            raise ConfigError(f"{label} needs a two-mode 'state' recipe")
    if cfg.offdiagonal_mode is not None:
        if n_state is None:
            raise ConfigError("sampling.offdiagonal_mode needs a 'state' recipe")
        # the scheme appends an ancilla, so two modes is the ceiling here
        if n_state > 2 or not 0 <= cfg.offdiagonal_mode < n_state:
            raise ConfigError(
                f"sampling.offdiagonal_mode must name a mode of a 1- or 2-mode state, "
                f"got mode {cfg.offdiagonal_mode} with {n_state} mode(s)")

    if cfg.sweep is not None:
        _grid_checks("delta1", cfg.sweep["delta1"])
        _grid_checks("delta2", cfg.sweep["delta2"])


def parse_config(data: dict) -> ExperimentConfig:
    """Validate an already-parsed mapping and fill in defaults."""
    schema = load_schema("config.schema.json")
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "(top level)"
        raise ConfigError(f"config schema violation at {path}: {exc.message}") from exc

    sampling = data.get("sampling", {})
    cfg = ExperimentConfig(
        seed=data.get("seed", 0),
        efficiency=float(data.get("efficiency", 1.0)),
        shots=data.get("shots", 20000),
        analyses=list(data.get("analyses", DEFAULT_ANALYSES)),
        state=data.get("state"),
        reference=data.get("reference"),
        oracle_check=data.get("oracle_check", False),
        oracle_cutoff=data.get("oracle_cutoff"),
        estimate_delta=sampling.get("estimate_delta", False),
        reconstruct_variance=sampling.get("reconstruct_variance", False),
        offdiagonal_mode=sampling.get("offdiagonal_mode"),
        sweep=data.get("sweep"),
        raw=data,
    )
    _semantic_checks(cfg)
    return cfg


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must contain a YAML mapping at the top level")
    return parse_config(data)
