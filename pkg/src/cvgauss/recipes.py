"""Declarative state-preparation recipes.

A recipe is a list of dictionaries: one initializer (vacuum or thermal)
followed by unitary steps. The same vocabulary drives both the covariance
pipeline and the truncated Fock oracle, which is the whole point: any
state expressed as a recipe can be cross-checked brute-force.

    [{"op": "thermal", "occupations": [1.0, 1.0]},
     {"op": "two_mode_squeeze", "modes": [0, 1], "s": 0.5},
     {"op": "squeeze", "mode": 0, "s": 0.3}]

Mode indices are 0-based.
"""

from __future__ import annotations

from .errors import ConfigError
from .states import MAX_MODES, GaussianState, thermal, vacuum
from .symplectic import (MAX_SQUEEZE, apply, beam_split, displace, rotate,
                         squeeze_single, two_mode_squeeze)

ORACLE_MAX_MODES = 2


def _fail(index: int, message: str):
    raise ConfigError(f"recipe step {index}: {message}")


def _need_number(op: dict, field: str, index: int) -> float:
    if field not in op:
        _fail(index, f"missing field {field!r}")
    value = op[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(index, f"field {field!r} must be a number, got {value!r}")
    return float(value)


def _need_mode(op: dict, field: str, index: int, n_modes: int) -> int:
    if field not in op:
        _fail(index, f"missing field {field!r}")
    value = op[field]
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(index, f"field {field!r} must be an integer mode index, got {value!r}")
    if not 0 <= value < n_modes:
        _fail(index, f"mode {value} out of range for {n_modes} mode(s) (indices are 0-based)")
    return value


def _need_mode_pair(op: dict, index: int, n_modes: int) -> tuple[int, int]:
    pair = op.get("modes")
    if (not isinstance(pair, list) or len(pair) != 2
            or any(isinstance(m, bool) or not isinstance(m, int) for m in pair)):
        _fail(index, "field 'modes' must be a list of two integer mode indices")
    a, b = pair
    if a == b:
        _fail(index, "the two modes must be distinct")
    for m in (a, b):
        if not 0 <= m < n_modes:
            _fail(index, f"mode {m} out of range for {n_modes} mode(s) (indices are 0-based)")
    return a, b


def validate_recipe(recipe) -> int:
    """Structural validation; returns the mode count. Raises ConfigError.

    Physicality (thermal occupations >= 1) is deliberately not checked
    here: a structurally valid recipe for an unphysical state should fail
    at build time, not at config time.
    """
    if not isinstance(recipe, list) or not recipe:
        raise ConfigError("recipe must be a non-empty list of steps")
    for index, op in enumerate(recipe):
        if not isinstance(op, dict) or "op" not in op:
            _fail(index, "each step must be a mapping with an 'op' field")

    head = recipe[0]
    if head["op"] == "vacuum":
        n_modes = head.get("modes")
        if isinstance(n_modes, bool) or not isinstance(n_modes, int) or not 1 <= n_modes <= MAX_MODES:
            _fail(0, f"vacuum needs 'modes' in 1..{MAX_MODES}")
    elif head["op"] == "thermal":
        occ = head.get("occupations")
        if (not isinstance(occ, list) or not 1 <= len(occ) <= MAX_MODES
                or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in occ)):
            _fail(0, f"thermal needs 'occupations': a list of 1..{MAX_MODES} numbers")
        n_modes = len(occ)
    else:
        _fail(0, "recipe must start with a 'vacuum' or 'thermal' initializer")

    for index, op in enumerate(recipe[1:], start=1):
        name = op["op"]
        if name == "squeeze":
            _need_mode(op, "mode", index, n_modes)
            s = _need_number(op, "s", index)
            if abs(s) > MAX_SQUEEZE:
                _fail(index, f"|s| <= {MAX_SQUEEZE} required, got {s}")
        elif name == "rotate":
            _need_mode(op, "mode", index, n_modes)
            _need_number(op, "phi", index)
        elif name == "two_mode_squeeze":
            _need_mode_pair(op, index, n_modes)
            s = _need_number(op, "s", index)
            if abs(s) > MAX_SQUEEZE:
                _fail(index, f"|s| <= {MAX_SQUEEZE} required, got {s}")
        elif name == "beam_split":
            _need_mode_pair(op, index, n_modes)
            _need_number(op, "theta", index)
        elif name == "displace":
            _need_mode(op, "mode", index, n_modes)
            _need_number(op, "dq", index)
            _need_number(op, "dp", index)
        elif name in ("vacuum", "thermal"):
            _fail(index, "initializers are only allowed as the first step")
        else:
            _fail(index, f"unknown op {name!r}")
    return n_modes


def oracle_representable(recipe) -> bool:
    return validate_recipe(recipe) <= ORACLE_MAX_MODES


def build_state(recipe) -> GaussianState:
    """Run a validated recipe through the covariance pipeline."""
    n_modes = validate_recipe(recipe)
    head = recipe[0]
    if head["op"] == "vacuum":
        state = vacuum(n_modes)
    else:
        state = thermal([float(x) for x in head["occupations"]])
    for op in recipe[1:]:
        name = op["op"]
        if name == "squeeze":
            step = squeeze_single(op["mode"], float(op["s"]), n_modes)
        elif name == "rotate":
            step = rotate(op["mode"], float(op["phi"]), n_modes)
        elif name == "two_mode_squeeze":
            a, b = op["modes"]
            step = two_mode_squeeze(a, b, float(op["s"]), n_modes)
        elif name == "beam_split":
            a, b = op["modes"]
            step = beam_split(a, b, float(op["theta"]), n_modes)
        else:
            a = op["mode"]
            step = displace(a, float(op["dq"]), float(op["dp"]), n_modes)
        state = apply(step, state)
    return state
