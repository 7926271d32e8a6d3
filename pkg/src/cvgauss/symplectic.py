"""Symplectic maps on quadrature space and their action on Gaussian states.

Every unitary generated by a quadratic Hamiltonian acts on the quadrature
vector in the Heisenberg picture as x -> M^T x with M symplectic,
M Omega M^T = Omega. Covariances and means transform as

    V -> M^T V M,    d -> d M.

Maps constructed for few modes can be applied to larger states; missing
modes are padded with the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalStateError
from .states import MAX_MODES, GaussianState, symplectic_form

TOL_SYMPLECTIC = 1e-10
MAX_SQUEEZE = 10.0    # guard against overflow in cosh/sinh/exp

_SIGMA_Z = np.diag([1.0, -1.0])


@dataclass(frozen=True, eq=False)
class SymplecticMap:
    """A linear map of quadratures, stored as its full 2n x 2n matrix."""

    M: np.ndarray

    def __init__(self, M: np.ndarray):
        M = np.array(np.asarray(M, dtype=float))
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2 != 0:
            raise ValueError(f"symplectic matrix must be square with even dimension, got {M.shape}")
        omega = symplectic_form(M.shape[0] // 2)
        defect = np.max(np.abs(M @ omega @ M.T - omega))
        if defect > TOL_SYMPLECTIC:
            raise ValueError(f"matrix is not symplectic, defect {defect:.3e} exceeds {TOL_SYMPLECTIC:.0e}")
        M.flags.writeable = False
        object.__setattr__(self, "M", M)

    @property
    def n_modes(self) -> int:
        return self.M.shape[0] // 2


@dataclass(frozen=True, eq=False)
class Displacement:
    """A shift of the quadrature means; the covariance is untouched."""

    offset: np.ndarray

    def __init__(self, offset: np.ndarray):
        offset = np.array(np.asarray(offset, dtype=float))
        if offset.ndim != 1 or offset.size % 2 != 0:
            raise ValueError(f"offset must have even length, got shape {offset.shape}")
        offset.flags.writeable = False
        object.__setattr__(self, "offset", offset)

    @property
    def n_modes(self) -> int:
        return self.offset.size // 2


def _resolve_modes(n_modes: int | None, *modes: int) -> int:
    if any(m < 0 for m in modes):
        raise ValueError(f"mode indices are 0-based and non-negative, got {modes}")
    needed = max(modes) + 1
    if n_modes is None:
        n_modes = needed
    if n_modes < needed:
        raise ValueError(f"n_modes={n_modes} cannot address mode {max(modes)}")
    if n_modes > MAX_MODES:
        raise ValueError(f"supported mode counts are 1..{MAX_MODES}, got {n_modes}")
    return n_modes


def _embed_single(block: np.ndarray, mode: int, n_modes: int) -> SymplecticMap:
    M = np.eye(2 * n_modes)
    M[2 * mode:2 * mode + 2, 2 * mode:2 * mode + 2] = block
    return SymplecticMap(M)


def _embed_pair(blocks: dict, mode_a: int, mode_b: int, n_modes: int) -> SymplecticMap:
    M = np.eye(2 * n_modes)
    for (i, j), block in blocks.items():
        mi = mode_a if i == 0 else mode_b
        mj = mode_a if j == 0 else mode_b
        M[2 * mi:2 * mi + 2, 2 * mj:2 * mj + 2] = block
    return SymplecticMap(M)


def squeeze_single(mode: int, s: float, n_modes: int | None = None) -> SymplecticMap:
    """Single-mode squeezer diag(e^-s, e^s): s > 0 narrows q at the expense of p."""
    if abs(s) > MAX_SQUEEZE:
        raise ValueError(f"|s| <= {MAX_SQUEEZE} required, got {s}")
    n_modes = _resolve_modes(n_modes, mode)
    return _embed_single(np.diag([np.exp(-s), np.exp(s)]), mode, n_modes)


def rotate(mode: int, phi: float, n_modes: int | None = None) -> SymplecticMap:
    """Phase rotation of one mode by angle phi."""
    n_modes = _resolve_modes(n_modes, mode)
    c, s = np.cos(phi), np.sin(phi)
    return _embed_single(np.array([[c, s], [-s, c]]), mode, n_modes)


def two_mode_squeeze(mode_a: int, mode_b: int, s: float, n_modes: int | None = None) -> SymplecticMap:
    """Two-mode squeezer: cosh(s) on the diagonal, sinh(s)*sigma_z across modes."""
    if mode_a == mode_b:
        raise ValueError("two_mode_squeeze needs two distinct modes")
    if abs(s) > MAX_SQUEEZE:
        raise ValueError(f"|s| <= {MAX_SQUEEZE} required, got {s}")
    n_modes = _resolve_modes(n_modes, mode_a, mode_b)
    ch, sh = np.cosh(s), np.sinh(s)
    blocks = {
        (0, 0): ch * np.eye(2), (1, 1): ch * np.eye(2),
        (0, 1): sh * _SIGMA_Z, (1, 0): sh * _SIGMA_Z,
    }
    return _embed_pair(blocks, mode_a, mode_b, n_modes)


def beam_split(mode_a: int, mode_b: int, theta: float, n_modes: int | None = None) -> SymplecticMap:
    """Beam splitter with transmissivity cos(theta)^2; theta = pi/4 is balanced."""
    if mode_a == mode_b:
        raise ValueError("beam_split needs two distinct modes")
    n_modes = _resolve_modes(n_modes, mode_a, mode_b)
    t, r = np.cos(theta), np.sin(theta)
    blocks = {
        (0, 0): t * np.eye(2), (1, 1): t * np.eye(2),
        (0, 1): -r * np.eye(2), (1, 0): r * np.eye(2),
    }
    return _embed_pair(blocks, mode_a, mode_b, n_modes)


def displace(mode: int, dq: float, dp: float, n_modes: int | None = None) -> Displacement:
    """Shift one mode's mean quadratures by (dq, dp)."""
    n_modes = _resolve_modes(n_modes, mode)
    offset = np.zeros(2 * n_modes)
    offset[2 * mode:2 * mode + 2] = (dq, dp)
    return Displacement(offset)


def _padded(M: np.ndarray, n_modes: int) -> np.ndarray:
    pad = np.eye(2 * n_modes)
    pad[:M.shape[0], :M.shape[1]] = M
    return pad


def compose(outer: SymplecticMap, inner: SymplecticMap) -> SymplecticMap:
    """Map equal to applying inner first, then outer.

    apply(compose(outer, inner), state) == apply(outer, apply(inner, state)).
    """
    n = max(outer.n_modes, inner.n_modes)
    return SymplecticMap(_padded(inner.M, n) @ _padded(outer.M, n))


def apply(op: SymplecticMap | Displacement, state: GaussianState) -> GaussianState:
    """Act on a state; ops defined on fewer modes leave the trailing modes alone."""
    if op.n_modes > state.n_modes:
        raise ValueError(f"op addresses {op.n_modes} modes, state has only {state.n_modes}")
    if isinstance(op, Displacement):
        shift = np.zeros(2 * state.n_modes)
        shift[:op.offset.size] = op.offset
        return GaussianState(state.V, state.d + shift)
    M = _padded(op.M, state.n_modes)
    return GaussianState(M.T @ state.V @ M, state.d @ M)


def apply_loss(state: GaussianState, eta: float) -> GaussianState:
    """Uniform detection/transmission loss: V -> eta V + (1 - eta) I, d -> sqrt(eta) d."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"efficiency must lie in [0, 1], got {eta}")
    if not isinstance(state, GaussianState):
        raise UnphysicalStateError("apply_loss expects a GaussianState")
    V = eta * state.V + (1.0 - eta) * np.eye(2 * state.n_modes)
    return GaussianState(V, np.sqrt(eta) * state.d)
