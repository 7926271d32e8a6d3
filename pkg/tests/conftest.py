"""Shared corpus generators.

Two ways to make two-mode states in the standard form:

  * standard_form_recipe: a physical preparation (thermal + two-mode
    squeezing + equal local squeezing) that the number-basis oracle can
    replay, with closed-form sector minima
        delta1 = nu * exp(-2s - 2u),  delta2 = nu * exp(-2s + 2u).
  * sample_pattern_params: direct draws of (n1, n2, c1, c2) filtered by
    the physicality of the assembled covariance; reaches the parameter
    combinations the recipe family cannot, but has no preparation story.
"""

from __future__ import annotations

import numpy as np
import pytest

from cvgauss import GaussianState, StandardFormParams, validate_physical


def standard_form_recipe(nu: float, s: float, u: float) -> list[dict]:
    return [
        {"op": "thermal", "occupations": [nu, nu]},
        {"op": "two_mode_squeeze", "modes": [0, 1], "s": s},
        {"op": "squeeze", "mode": 0, "s": u},
        {"op": "squeeze", "mode": 1, "s": u},
    ]


def recipe_deltas(nu: float, s: float, u: float) -> tuple[float, float]:
    return nu * np.exp(-2 * s - 2 * u), nu * np.exp(-2 * s + 2 * u)


def sample_pattern_params(rng: np.random.Generator, n_max: float = 6.0,
                          margin: float = 0.0) -> StandardFormParams:
    """One random physical standard-form parameter set.

    margin > 0 keeps the draw away from the separability boundary:
    |delta1*delta2 - 1| >= margin.
    """
    while True:
        n1 = rng.uniform(0.2, n_max)
        n2 = rng.uniform(0.2, n_max)
        c1 = rng.uniform(-n1, n1)
        c2 = rng.uniform(-n2, n2)
        # physicality of the pattern: both sector products clear 1
        if (n1 + c1) * (n2 + c2) < 1.0 or (n1 - c1) * (n2 - c2) < 1.0:
            continue
        params = StandardFormParams(n1=n1, n2=n2, c1=c1, c2=c2)
        if margin > 0.0 and abs(params.delta1 * params.delta2 - 1.0) < margin:
            continue
        return params


def random_single_mode(rng: np.random.Generator, pure: bool,
                       displaced: bool = True) -> GaussianState:
    """Random squeezed rotated (displaced) thermal or vacuum state."""
    nt = 1.0 if pure else rng.uniform(1.0, 4.0)
    s = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, np.pi)
    c, n = np.cos(phi), np.sin(phi)
    R = np.array([[c, n], [-n, c]])
    V = R.T @ np.diag([nt * np.exp(-2 * s), nt * np.exp(2 * s)]) @ R
    d = rng.uniform(-2.0, 2.0, size=2) if displaced else np.zeros(2)
    state = GaussianState(V, d)
    assert validate_physical(state).physical
    return state


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240911)
