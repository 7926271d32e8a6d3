"""Fidelity, purity, and mixedness-based separability for Gaussian states.

Fidelity between single-mode states comes in three routes that agree
exactly whenever at least one input is pure:

  * closed_form          -- determinant formula on (V1 + V2)
  * beam_splitter_w0     -- overlap read off the Wigner function at the
                            origin of one output port of a balanced
                            beam splitter fed with both states
  * homodyne_expression  -- the same number written in terms of the mean
                            and spread of the rotated output quadratures

When both inputs are mixed the identical value is still returned but it
is an overlap Tr(rho1 rho2), not a fidelity; results carry a flag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalStateError
from .states import GaussianState, StandardFormParams
from .symplectic import apply, beam_split, rotate

PURITY_DET_TOL = 1e-6    # |det V - 1| below this counts as pure
ROUTE_CLOSED_FORM = "closed_form"
ROUTE_BEAM_SPLITTER = "beam_splitter_w0"
ROUTE_HOMODYNE = "homodyne_expression"


@dataclass(frozen=True)
class FidelityResult:
    value: float
    route: str
    overlap_only: bool    # True when neither input was pure


@dataclass(frozen=True)
class PurityResult:
    purity: float
    mixedness: float         # 1 - P
    mixedness_quad: float    # 1/P^2 - 1 = det V - 1


def purity(state: GaussianState) -> PurityResult:
    """P = 1 / sqrt(det V), together with both mixedness conventions."""
    det = float(np.linalg.det(state.V))
    if det <= 0.0:
        raise UnphysicalStateError(f"det V = {det:.3e} is not positive")
    p = det ** -0.5
    return PurityResult(purity=p, mixedness=1.0 - p, mixedness_quad=det - 1.0)


def _is_pure(state: GaussianState) -> bool:
    return abs(float(np.linalg.det(state.V)) - 1.0) <= PURITY_DET_TOL


def _check_single_mode(*states: GaussianState) -> None:
    for s in states:
        if s.n_modes != 1:
            raise ValueError("fidelity routes are defined for single-mode states")


def fidelity_closed_form(s1: GaussianState, s2: GaussianState) -> FidelityResult:
    """F = 2 / sqrt(det(V1 + V2)) * exp(-dd (V1 + V2)^-1 dd^T / 2)."""
    _check_single_mode(s1, s2)
    total = s1.V + s2.V
    det = float(np.linalg.det(total))
    if det <= 0.0:
        raise UnphysicalStateError(f"det(V1 + V2) = {det:.3e} is not positive")
    dd = s1.d - s2.d
    value = 2.0 / np.sqrt(det) * np.exp(-0.5 * dd @ np.linalg.solve(total, dd))
    return FidelityResult(float(value), ROUTE_CLOSED_FORM,
                          overlap_only=not (_is_pure(s1) or _is_pure(s2)))


def _bs_output_moments(s1: GaussianState, s2: GaussianState) -> tuple[np.ndarray, np.ndarray]:
    """First output port of a balanced beam splitter fed with s1 (x) s2.

    The angle is chosen so the port carries V = (V1 + V2)/2 and
    d = (d1 - d2)/sqrt(2); the overlap is then 2*pi*W(0) of that port.
    """
    V = np.zeros((4, 4))
    V[:2, :2] = s1.V
    V[2:, 2:] = s2.V
    joint = GaussianState(V, np.concatenate([s1.d, s2.d]))
    out = apply(beam_split(0, 1, -np.pi / 4), joint)
    return out.V[:2, :2], out.d[:2]


def fidelity_via_bs(s1: GaussianState, s2: GaussianState) -> FidelityResult:
    """Overlap via the beam-splitter construction, evaluated as 2*pi*W(0)."""
    _check_single_mode(s1, s2)
    V, d = _bs_output_moments(s1, s2)
    det = float(np.linalg.det(V))
    if det <= 0.0:
        raise UnphysicalStateError(f"output det V = {det:.3e} is not positive")
    value = np.exp(-0.5 * d @ np.linalg.solve(V, d)) / np.sqrt(det)
    return FidelityResult(float(value), ROUTE_BEAM_SPLITTER,
                          overlap_only=not (_is_pure(s1) or _is_pure(s2)))


def fidelity_homodyne_expression(q_mean: float, p_mean: float,
                                 delta_q: float, delta_p: float) -> FidelityResult:
    """Overlap from homodyne-accessible moments of the beam-splitter port.

    For uncorrelated output quadratures with standard deviations
    (delta_q, delta_p),

        F = exp(-(q_mean^2 / delta_q^2 + p_mean^2 / delta_p^2) / 2)
            / (delta_q * delta_p).
    """
    if delta_q <= 0.0 or delta_p <= 0.0:
        raise ValueError("quadrature spreads must be positive")
    value = np.exp(-0.5 * ((q_mean / delta_q) ** 2 + (p_mean / delta_p) ** 2))
    return FidelityResult(float(value / (delta_q * delta_p)), ROUTE_HOMODYNE,
                          overlap_only=False)


def fidelity_via_homodyne(s1: GaussianState, s2: GaussianState) -> FidelityResult:
    """Third route: rotate the beam-splitter port until its quadratures
    decorrelate, then feed the moments to fidelity_homodyne_expression."""
    _check_single_mode(s1, s2)
    V, d = _bs_output_moments(s1, s2)
    # (R^T V R)_{01} vanishes at 2*phi = atan2(2b, d - a) for V = [[a, b], [b, d]]
    phi = 0.5 * np.arctan2(2.0 * V[0, 1], V[1, 1] - V[0, 0])
    port = apply(rotate(0, phi), GaussianState(V, d))
    dq, dp = np.sqrt(port.V[0, 0]), np.sqrt(port.V[1, 1])
    result = fidelity_homodyne_expression(port.d[0], port.d[1], dq, dp)
    return FidelityResult(result.value, result.route,
                          overlap_only=not (_is_pure(s1) or _is_pure(s2)))


@dataclass(frozen=True)
class MixednessVerdict:
    separable: bool | None    # None when the precondition fails
    lhs: float                # M12 - M1 - M2, quadratic convention
    threshold: float          # 2 |c1 c2|
    precondition_ok: bool
    m12: float
    m1: float
    m2: float


def mixedness_separability(params: StandardFormParams) -> MixednessVerdict:
    """Separability from mixedness bookkeeping in the standard form.

    With the quadratic mixedness M = det V - 1 the two-mode state is
    separable iff M12 - M1 - M2 >= 2 |c1 c2|, valid whenever
    (n1 + |c1|)(n2 + |c2|) >= 1. The linear convention M = 1 - P does not
    support this statement; see the purity docstring for both values.
    """
    n1, n2, c1, c2 = params.n1, params.n2, params.c1, params.c2
    det_v = (n1 ** 2 - c1 ** 2) * (n2 ** 2 - c2 ** 2)
    m12 = det_v - 1.0
    m1 = n1 * n2 - 1.0    # each mode reduces to the same diag(n1, n2)
    m2 = n1 * n2 - 1.0
    lhs = m12 - m1 - m2
    threshold = 2.0 * abs(c1 * c2)
    # the inequality is two-sided only above the vacuum-product line
    precondition_ok = (n1 + abs(c1)) * (n2 + abs(c2)) >= 1.0 - 1e-9
    separable = bool(lhs >= threshold) if precondition_ok else None
    return MixednessVerdict(separable=separable, lhs=lhs, threshold=threshold,
                            precondition_ok=precondition_ok, m12=m12, m1=m1, m2=m2)
