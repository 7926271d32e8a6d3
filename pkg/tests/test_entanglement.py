import numpy as np
import pytest

from cvgauss import (REGION_FRAGILE, REGION_ROBUST, REGION_SEPARABLE,
                     StandardFormParams, UnphysicalStateError, analyze, apply,
                     apply_loss, classify_region, critical_efficiency,
                     delta_under_loss, negativity_lemma1, negativity_sympl,
                     partial_transpose, reid_drummond, rotate, separable_ppt,
                     symplectic_spectrum, thermal, two_mode_squeeze, vacuum)
from conftest import sample_pattern_params


def tmsv(s: float):
    ch, sh = np.cosh(2 * s), np.sinh(2 * s)
    return StandardFormParams(n1=ch, n2=ch, c1=sh, c2=-sh)


def test_symplectic_spectrum_of_vacuum_and_thermal():
    assert np.allclose(symplectic_spectrum(vacuum(2)), [1.0, 1.0])
    assert np.allclose(symplectic_spectrum(thermal([1.5, 3.0])), [1.5, 3.0])


def test_symplectic_spectrum_invariant_under_rotation():
    state = apply(two_mode_squeeze(0, 1, 0.6), thermal([1.2, 1.2]))
    rotated = apply(rotate(0, 0.8), state)
    assert np.allclose(symplectic_spectrum(rotated), symplectic_spectrum(state))


def test_symplectic_spectrum_rejects_nonpositive():
    with pytest.raises(UnphysicalStateError):
        symplectic_spectrum(np.diag([1.0, -0.5, 1.0, 1.0]))


def test_partial_transpose_flips_p_correlations():
    state = tmsv(0.4).to_state()
    pt = partial_transpose(state)
    assert pt[1, 3] == pytest.approx(-state.V[1, 3])
    assert pt[0, 2] == pytest.approx(state.V[0, 2])
    # involution
    assert np.allclose(partial_transpose(pt), state.V)


def test_tmsv_negativity_closed_form():
    for s in (0.2, 0.5, 0.8):
        params = tmsv(s)
        E, nu = negativity_sympl(params.to_state())
        assert nu == pytest.approx([np.exp(-2 * s), np.exp(2 * s)], rel=1e-10)
        assert E == pytest.approx(np.exp(2 * s) - 1.0, rel=1e-10)
        assert negativity_lemma1(params) == pytest.approx(np.exp(4 * s) - 1.0, rel=1e-10)


def test_lemma1_is_square_of_symplectic_negativity(rng):
    """(1 + E)^2 - 1 from the smallest PT symplectic value equals the
    sector-minimum formula whenever the correlations have opposite signs."""
    checked = 0
    while checked < 200:
        params = sample_pattern_params(rng)
        if params.c1 * params.c2 > 0:
            continue
        E, _ = negativity_sympl(params.to_state())
        lemma = negativity_lemma1(params)
        assert lemma == pytest.approx((1.0 + E) ** 2 - 1.0, rel=1e-9, abs=1e-9)
        checked += 1


def test_separable_ppt_matches_delta_product(rng):
    for _ in range(300):
        params = sample_pattern_params(rng, margin=1e-6)
        assert separable_ppt(params.to_state()) == (params.delta1 * params.delta2 >= 1.0)


def test_same_sign_correlations_are_always_separable(rng):
    checked = 0
    while checked < 100:
        params = sample_pattern_params(rng)
        if params.c1 * params.c2 <= 0:
            continue
        assert separable_ppt(params.to_state())
        checked += 1


def test_thermal_product_state_is_separable():
    assert separable_ppt(thermal([2.0, 3.0]))
    E, _ = negativity_sympl(thermal([2.0, 3.0]))
    assert E == 0.0


def test_classify_region_cases():
    assert classify_region(1.0, 1.0) == REGION_SEPARABLE
    assert classify_region(0.9, 1.2) == REGION_SEPARABLE    # product 1.08
    assert classify_region(0.5, 0.5) == REGION_ROBUST
    assert classify_region(0.2, 1.9) == REGION_FRAGILE      # product < 1, sum > 2
    with pytest.raises(ValueError):
        classify_region(-0.1, 1.0)


def test_delta_under_loss():
    assert delta_under_loss(0.3, 1.0) == pytest.approx(0.3)
    assert delta_under_loss(0.3, 0.0) == pytest.approx(1.0)
    assert delta_under_loss(3.0, 0.5) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        delta_under_loss(0.3, 1.5)


def test_critical_efficiency_values():
    with pytest.raises(ValueError):
        critical_efficiency(1.2, 0.9)    # separable input
    assert critical_efficiency(0.5, 0.9) == 0.0    # robust region
    assert critical_efficiency(0.2, 3.0) == pytest.approx(0.75, abs=1e-12)


def test_critical_efficiency_is_the_crossing_point():
    d1, d2 = 0.2, 3.0
    eta_c = critical_efficiency(d1, d2)
    for eps in (0.01, 0.001):
        below = delta_under_loss(d1, eta_c - eps) * delta_under_loss(d2, eta_c - eps)
        above = delta_under_loss(d1, eta_c + eps) * delta_under_loss(d2, eta_c + eps)
        assert below > 1.0 > above


def test_loss_flip_through_the_full_pipeline():
    state = StandardFormParams(n1=1.0, n2=4.5, c1=0.8, c2=-1.5).to_state()
    assert not separable_ppt(state)
    assert separable_ppt(apply_loss(state, 0.74))
    assert not separable_ppt(apply_loss(state, 0.76))


def test_robust_states_stay_entangled_under_any_loss(rng):
    checked = 0
    while checked < 50:
        params = sample_pattern_params(rng)
        if classify_region(params.delta1, params.delta2) != REGION_ROBUST:
            continue
        for eta in np.linspace(0.05, 1.0, 8):
            lossy = apply_loss(params.to_state(), float(eta))
            assert not separable_ppt(lossy)
        checked += 1


def test_reid_drummond_tmsv_detected():
    verdict = reid_drummond(tmsv(0.5))
    assert verdict.detected
    assert verdict.cond_var_q == pytest.approx(1.0 / np.cosh(1.0), rel=1e-12)
    assert verdict.cond_var_p == pytest.approx(1.0 / np.cosh(1.0), rel=1e-12)


def test_reid_drummond_misses_weakly_entangled_states():
    # delta product 0.64 < 1 (entangled) but conditional variances too noisy
    params = StandardFormParams(n1=2.2, n2=2.2, c1=1.4, c2=-1.4)
    assert not separable_ppt(params.to_state())
    assert not reid_drummond(params).detected


def test_analyze_standard_form_report():
    rep = analyze(tmsv(0.5).to_state())
    assert rep.standard_form
    assert rep.separable is False
    assert rep.region == REGION_ROBUST
    assert rep.eta_critical == 0.0
    assert rep.E_sympl == pytest.approx(np.exp(1.0) - 1.0, rel=1e-10)
    assert rep.E_lemma1 == pytest.approx(np.exp(2.0) - 1.0, rel=1e-10)
    assert rep.delta1 == pytest.approx(np.exp(-1.0))
    assert rep.reid_detected is True


def test_analyze_off_pattern_state():
    state = apply(rotate(0, 0.3), tmsv(0.5).to_state())
    rep = analyze(state)
    assert not rep.standard_form
    assert rep.region is None and rep.delta1 is None
    # the PT spectrum itself is basis-independent
    assert rep.E_sympl == pytest.approx(np.exp(1.0) - 1.0, rel=1e-9)
