import math

import numpy as np
import pytest

from cvgauss import (CutoffTooSmall, build_state, oracle_build,
                     oracle_fidelity, oracle_negativity, oracle_purity,
                     oracle_variance)

VACUUM = [{"op": "vacuum", "modes": 1}]
COHERENT = [{"op": "vacuum", "modes": 1}, {"op": "displace", "mode": 0, "dq": 2.0, "dp": 0.0}]
THERMAL3 = [{"op": "thermal", "occupations": [3.0]}]


def test_vacuum_density():
    fd = oracle_build(VACUUM, cutoff=8)
    assert fd.rho[0, 0] == pytest.approx(1.0, abs=1e-12)
    assert oracle_purity(fd) == pytest.approx(1.0, abs=1e-10)
    V, d = oracle_variance(fd)
    assert np.allclose(V, np.eye(2), atol=1e-10)
    assert np.allclose(d, 0.0, atol=1e-12)


def test_coherent_populations_are_poissonian():
    # dq = 2 is amplitude alpha = 1: p_n = e^-1 / n!
    fd = oracle_build(COHERENT, cutoff=20)
    pops = np.real(np.diag(fd.rho))
    for n in range(4):
        assert pops[n] == pytest.approx(np.exp(-1.0) / math.factorial(n), abs=1e-9)
    V, d = oracle_variance(fd)
    assert np.allclose(V, np.eye(2), atol=1e-8)
    assert np.allclose(d, [2.0, 0.0], atol=1e-8)


def test_thermal_populations_and_purity():
    # occupation 3 in variance units is nbar = 1: p_n = 2^-(n+1)
    fd = oracle_build(THERMAL3)
    pops = np.real(np.diag(fd.rho))
    assert pops[0] == pytest.approx(0.5, abs=1e-9)
    assert pops[3] == pytest.approx(2.0 ** -4, abs=1e-9)
    assert oracle_purity(fd) == pytest.approx(1.0 / 3.0, abs=1e-8)


def test_auto_cutoff_doubles_until_tail_is_clean():
    fd = oracle_build(THERMAL3)
    # at the starting cutoff 20 the edge tail is 2^-18 > 1e-6, one doubling fixes it
    assert fd.cutoff == 40
    assert fd.tail_mass < 1e-6
    assert fd.trace_deficit < 1e-8


def test_explicit_cutoff_too_small_raises():
    with pytest.raises(CutoffTooSmall) as err:
        oracle_build(THERMAL3, cutoff=10)
    # geometric populations 2^-(n+1); within the truncated basis the edge
    # region starting at index 9 holds exactly p_9 = 2^-10
    assert err.value.tail_mass == pytest.approx(2.0 ** -10, rel=1e-6)


def test_cutoff_out_of_range_raises():
    with pytest.raises(ValueError):
        oracle_build(VACUUM, cutoff=100)
    with pytest.raises(ValueError):
        oracle_build(VACUUM, cutoff=1)


def test_squeezed_vacuum_variance_matches_closed_form():
    recipe = [{"op": "vacuum", "modes": 1}, {"op": "squeeze", "mode": 0, "s": 0.3}]
    V, d = oracle_variance(oracle_build(recipe, cutoff=24))
    assert np.allclose(V, np.diag([np.exp(-0.6), np.exp(0.6)]), atol=1e-8)


def test_rotation_and_displacement_track_the_covariance_pipeline():
    recipe = [
        {"op": "thermal", "occupations": [1.4]},
        {"op": "squeeze", "mode": 0, "s": 0.4},
        {"op": "rotate", "mode": 0, "phi": 0.7},
        {"op": "displace", "mode": 0, "dq": 0.8, "dp": -0.6},
    ]
    V_oracle, d_oracle = oracle_variance(oracle_build(recipe, cutoff=30))
    state = build_state(recipe)
    assert np.allclose(V_oracle, state.V, atol=1e-6)
    assert np.allclose(d_oracle, state.d, atol=1e-6)


def test_two_mode_recipe_variance_matches():
    recipe = [
        {"op": "thermal", "occupations": [1.2, 1.0]},
        {"op": "two_mode_squeeze", "modes": [0, 1], "s": 0.3},
        {"op": "beam_split", "modes": [0, 1], "theta": 0.5},
    ]
    V_oracle, d_oracle = oracle_variance(oracle_build(recipe, cutoff=14))
    state = build_state(recipe)
    assert np.allclose(V_oracle, state.V, atol=1e-6)
    assert np.allclose(d_oracle, 0.0, atol=1e-10)


def test_mode_order_swap_matches_symplectic_convention():
    # ops addressed as modes [1, 0] must agree with the covariance pipeline
    recipe = [
        {"op": "thermal", "occupations": [1.0, 1.3]},
        {"op": "beam_split", "modes": [1, 0], "theta": 0.4},
        {"op": "two_mode_squeeze", "modes": [1, 0], "s": 0.25},
    ]
    V_oracle, _ = oracle_variance(oracle_build(recipe, cutoff=14))
    state = build_state(recipe)
    assert np.allclose(V_oracle, state.V, atol=1e-6)


def test_oracle_fidelity_coherent_vs_vacuum():
    f, both_mixed = oracle_fidelity(oracle_build(VACUUM, cutoff=20),
                                    oracle_build(COHERENT, cutoff=20))
    assert f == pytest.approx(np.exp(-1.0), abs=1e-8)
    assert not both_mixed


def test_oracle_fidelity_flags_two_mixed_inputs():
    # both factors need the same truncated basis, hence the shared cutoff
    f, both_mixed = oracle_fidelity(
        oracle_build([{"op": "thermal", "occupations": [2.0]}], cutoff=24),
        oracle_build(THERMAL3, cutoff=24))
    assert both_mixed
    assert f == pytest.approx(0.4, abs=1e-8)    # 2 / sqrt(det(V1 + V2))


def test_oracle_negativity_of_two_mode_squeezed_vacuum():
    s = 0.3
    recipe = [{"op": "vacuum", "modes": 2},
              {"op": "two_mode_squeeze", "modes": [0, 1], "s": s}]
    value = oracle_negativity(oracle_build(recipe, cutoff=16))
    assert value == pytest.approx(np.exp(2 * s) - 1.0, rel=1e-4)


def test_oracle_negativity_vanishes_for_product_state():
    value = oracle_negativity(oracle_build([{"op": "thermal", "occupations": [1.5, 2.0]}]))
    assert abs(value) < 1e-6
