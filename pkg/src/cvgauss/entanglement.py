"""Two-mode entanglement: PPT spectra, degrees, regions, loss thresholds.

The partial transpose of a Gaussian state flips the sign of one mode's p
quadrature on the covariance level. A two-mode state is separable iff the
partially transposed covariance is still physical, i.e. iff every
symplectic eigenvalue of it is >= 1.

For states in the mode-symmetric standard form the whole story collapses
onto the sector minima delta_i = n_i - |c_i|: the state is separable iff
delta1 * delta2 >= 1, and uniform loss moves each delta along
delta -> eta * delta + 1 - eta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormMismatch, UnphysicalStateError
from .states import (GaussianState, StandardFormParams, symplectic_form,
                     to_standard_form_params)

SEP_TOL = 1e-9    # slack on the nu_tilde >= 1 / delta1*delta2 >= 1 verdicts

REGION_SEPARABLE = "S"
REGION_ROBUST = "E"
REGION_FRAGILE = "E_prime"


def _as_cov(state_or_cov) -> np.ndarray:
    if isinstance(state_or_cov, GaussianState):
        return state_or_cov.V
    V = np.asarray(state_or_cov, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2 != 0:
        raise ValueError(f"expected a covariance matrix, got shape {V.shape}")
    return V


def partial_transpose(state_or_cov, mode: int = 1) -> np.ndarray:
    """Covariance of the partial transpose: p of the given mode changes sign."""
    V = _as_cov(state_or_cov)
    n_modes = V.shape[0] // 2
    if not 0 <= mode < n_modes:
        raise ValueError(f"mode {mode} out of range for {n_modes} modes")
    flip = np.ones(V.shape[0])
    flip[2 * mode + 1] = -1.0
    return V * np.outer(flip, flip)


def symplectic_spectrum(state_or_cov) -> np.ndarray:
    """Moduli of the eigenvalues of i*Omega*V, one per mode, ascending.

    Physical covariances have every value >= 1; pure states sit at 1.
    """
    V = _as_cov(state_or_cov)
    if np.linalg.eigvalsh(V).min() <= 0.0:
        raise UnphysicalStateError("covariance is not positive definite")
    n_modes = V.shape[0] // 2
    omega = symplectic_form(n_modes)
    mods = np.sort(np.abs(np.linalg.eigvals(1j * omega @ V)))
    pairs = mods.reshape(n_modes, 2)
    if np.max(np.abs(pairs[:, 0] - pairs[:, 1])) > 1e-8 * max(1.0, mods.max()):
        raise UnphysicalStateError("eigenvalues of i*Omega*V do not pair up")
    return pairs.mean(axis=1)


def negativity_sympl(state_or_cov) -> tuple[float, np.ndarray]:
    """Entanglement degree from the PT symplectic spectrum.

    Returns (E, nu_tilde) where E = prod(1/nu for nu_tilde < 1) - 1; E = 0
    means the partial transpose is physical and the state is separable.
    """
    V = _as_cov(state_or_cov)
    if V.shape[0] != 4:
        raise ValueError("PT negativity is defined here for two-mode states")
    nu_tilde = symplectic_spectrum(partial_transpose(V))
    below = nu_tilde[nu_tilde < 1.0 - SEP_TOL]
    E = float(np.prod(1.0 / below) - 1.0) if below.size else 0.0
    return E, nu_tilde


def negativity_lemma1(params: StandardFormParams) -> float:
    """Degree 1/(delta1*delta2) - 1 read directly off the standard form.

    Zero for separable states. Note this is (1 + E)^2 - 1 in terms of the
    PT-spectrum degree E whenever c1*c2 <= 0, not the same number.
    """
    d1, d2 = params.delta1, params.delta2
    if d1 <= 0.0 or d2 <= 0.0:
        raise UnphysicalStateError(f"sector minima must be positive, got ({d1:.4g}, {d2:.4g})")
    return max(0.0, 1.0 / (d1 * d2) - 1.0)


def separable_ppt(state_or_params) -> bool:
    """PPT separability verdict for a two-mode state.

    Standard-form parameters are judged by delta1 * delta2 >= 1; anything
    else goes through the PT symplectic spectrum.
    """
    if isinstance(state_or_params, StandardFormParams):
        return bool(state_or_params.delta1 * state_or_params.delta2 >= 1.0 - SEP_TOL)
    _, nu_tilde = negativity_sympl(state_or_params)
    return bool(nu_tilde.min() >= 1.0 - SEP_TOL)


def delta_under_loss(delta: float, eta: float) -> float:
    """Sector minimum after uniform loss with efficiency eta."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"efficiency must lie in [0, 1], got {eta}")
    return eta * delta + 1.0 - eta


def classify_region(delta1: float, delta2: float) -> str:
    """Loss-robustness region of a standard-form state.

    S:       delta1*delta2 >= 1, separable at any efficiency.
    E:       entangled and stays entangled for every eta in (0, 1].
    E_prime: entangled at eta = 1 but separable below a finite threshold.
    """
    if delta1 <= 0.0 or delta2 <= 0.0:
        raise ValueError(f"sector minima must be positive, got ({delta1:.4g}, {delta2:.4g})")
    if delta1 * delta2 >= 1.0 - SEP_TOL:
        return REGION_SEPARABLE
    if delta1 + delta2 < 2.0:
        return REGION_ROBUST
    return REGION_FRAGILE


def critical_efficiency(delta1: float, delta2: float) -> float:
    """Efficiency below which loss disentangles the state.

    Zero in region E (no finite threshold); in E_prime the crossing sits at
    eta* = (2 - delta1 - delta2) / ((1 - delta1)(1 - delta2)).
    Raises for separable inputs.
    """
    region = classify_region(delta1, delta2)
    if region == REGION_SEPARABLE:
        raise ValueError("state is separable, no entanglement to destroy")
    if region == REGION_ROBUST:
        return 0.0
    eta = (2.0 - delta1 - delta2) / ((1.0 - delta1) * (1.0 - delta2))
    return float(min(max(eta, 0.0), 1.0))


@dataclass(frozen=True)
class ReidVerdict:
    """EPR-type detection from products of conditional variances."""

    detected: bool
    cond_var_q: float    # var(q1 | q2) = (n1^2 - c1^2) / n1
    cond_var_p: float


def reid_drummond(params: StandardFormParams) -> ReidVerdict:
    """Inference-based EPR test: detected iff the conditional-variance
    product drops below the vacuum level.

    Detection implies PPT entanglement (the converse fails: this test
    misses some entangled states).
    """
    n1, n2, c1, c2 = params.n1, params.n2, params.c1, params.c2
    if n1 <= 0.0 or n2 <= 0.0:
        raise UnphysicalStateError("variances must be positive")
    cond_q = (n1 * n1 - c1 * c1) / n1
    cond_p = (n2 * n2 - c2 * c2) / n2
    return ReidVerdict(detected=bool(cond_q * cond_p < 1.0),
                       cond_var_q=cond_q, cond_var_p=cond_p)


@dataclass(frozen=True)
class EntanglementReport:
    """Everything this package can say about a two-mode state's entanglement."""

    E_sympl: float
    nu_tilde: tuple
    separable: bool
    standard_form: bool
    delta1: float | None = None
    delta2: float | None = None
    E_lemma1: float | None = None
    region: str | None = None
    eta_critical: float | None = None
    reid_detected: bool | None = None


def analyze(state: GaussianState | StandardFormParams) -> EntanglementReport:
    """Full entanglement report; standard-form extras when the pattern fits."""
    if isinstance(state, StandardFormParams):
        params = state
        state = params.to_state()
    else:
        try:
            params = to_standard_form_params(state)
        except FormMismatch:
            params = None
    E, nu_tilde = negativity_sympl(state)
    separable = bool(nu_tilde.min() >= 1.0 - SEP_TOL)
    if params is None:
        return EntanglementReport(E_sympl=E, nu_tilde=tuple(nu_tilde),
                                  separable=separable, standard_form=False)
    region = classify_region(params.delta1, params.delta2)
    eta_c = None if region == REGION_SEPARABLE else critical_efficiency(params.delta1, params.delta2)
    return EntanglementReport(
        E_sympl=E, nu_tilde=tuple(nu_tilde), separable=separable, standard_form=True,
        delta1=params.delta1, delta2=params.delta2,
        E_lemma1=negativity_lemma1(params), region=region, eta_critical=eta_c,
        reid_detected=reid_drummond(params).detected,
    )
