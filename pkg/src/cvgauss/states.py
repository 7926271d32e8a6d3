"""Covariance-matrix representation of Gaussian states.

Quadratures are q = a + a' and p = i(a' - a), interleaved as
(q1, p1, q2, p2, ...), so [q, p] = 2i and the vacuum covariance is the
identity. A covariance matrix V describes a physical state iff
V + i*Omega >= 0, and the characteristic function of the state is

    C(u) = exp(-u V u^T / 2 + i d.u)

with d the vector of quadrature means.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormMismatch, UnphysicalStateError

TOL_SYM = 1e-10    # largest tolerated asymmetry |V - V^T|
TOL_PHYS = 1e-9    # eigenvalue slack in the physicality check
TOL_FORM = 1e-9    # largest tolerated off-pattern entry in standard form

MAX_MODES = 3


def symplectic_form(n_modes: int) -> np.ndarray:
    """Matrix of the commutator [x_i, x_j] = 2i Omega_ij, one block per mode."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class GaussianState:
    """A Gaussian state, fixed completely by covariance V and mean vector d."""

    V: np.ndarray
    d: np.ndarray

    def __init__(self, V: np.ndarray, d: np.ndarray | None = None):
        V = np.asarray(V, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2 != 0:
            raise ValueError(f"covariance must be square with even dimension, got shape {V.shape}")
        n_modes = V.shape[0] // 2
        if not 1 <= n_modes <= MAX_MODES:
            raise ValueError(f"supported mode counts are 1..{MAX_MODES}, got {n_modes}")
        asym = np.max(np.abs(V - V.T))
        if asym > TOL_SYM:
            raise ValueError(f"covariance asymmetry {asym:.3e} exceeds {TOL_SYM:.0e}")
        if d is None:
            d = np.zeros(2 * n_modes)
        d = np.asarray(d, dtype=float)
        if d.shape != (2 * n_modes,):
            raise ValueError(f"mean vector shape {d.shape} does not match {2 * n_modes} quadratures")
        object.__setattr__(self, "V", _readonly((V + V.T) / 2.0))
        object.__setattr__(self, "d", _readonly(d))

    @property
    def n_modes(self) -> int:
        return self.V.shape[0] // 2


@dataclass(frozen=True)
class PhysicalityReport:
    physical: bool
    min_eigenvalue: float


def vacuum(n_modes: int = 1) -> GaussianState:
    """Vacuum on the requested number of modes: V = I, d = 0."""
    if not 1 <= n_modes <= MAX_MODES:
        raise ValueError(f"supported mode counts are 1..{MAX_MODES}, got {n_modes}")
    return GaussianState(np.eye(2 * n_modes))


def thermal(occupations) -> GaussianState:
    """Product thermal state with V = diag(nt_1, nt_1, nt_2, nt_2, ...).

    The quadrature variance nt relates to the mean photon number as
    nt = 2*nbar + 1, so nt = 1 is the vacuum and nt < 1 is unphysical.
    """
    occ = np.atleast_1d(np.asarray(occupations, dtype=float))
    if occ.ndim != 1 or not 1 <= occ.size <= MAX_MODES:
        raise ValueError(f"expected 1..{MAX_MODES} occupation values, got {occ.shape}")
    if np.any(occ < 1.0):
        raise UnphysicalStateError(f"thermal occupations must satisfy nt >= 1, got {occ.tolist()}")
    return GaussianState(np.diag(np.repeat(occ, 2)))


def char_fn(state: GaussianState, u: np.ndarray) -> complex | np.ndarray:
    """Characteristic function C(u) = exp(-u V u^T / 2 + i d.u).

    Accepts a single point of shape (2n,) or a batch of shape (m, 2n).
    """
    u = np.asarray(u, dtype=float)
    dim = state.V.shape[0]
    if u.shape[-1:] != (dim,) or u.ndim > 2:
        raise ValueError(f"argument shape {u.shape} does not match {dim} quadratures")
    quad = np.einsum("...i,ij,...j->...", u, state.V, u)
    vals = np.exp(-0.5 * quad + 1j * (u @ state.d))
    return complex(vals) if u.ndim == 1 else vals


def validate_physical(state: GaussianState, tol: float = TOL_PHYS) -> PhysicalityReport:
    """Check V + i*Omega >= 0, reporting the smallest eigenvalue found."""
    omega = symplectic_form(state.n_modes)
    eigs = np.linalg.eigvalsh(state.V + 1j * omega)
    lo = float(eigs.min())
    return PhysicalityReport(physical=lo >= -tol, min_eigenvalue=lo)


@dataclass(frozen=True)
class StandardFormParams:
    """Mode-symmetric two-mode standard form.

    Both modes share the local covariance diag(n1, n2): n1 is the common q
    variance and n2 the common p variance. The only cross-mode entries are
    c1 = cov(q1, q2) and c2 = cov(p1, p2). The sector minima
    delta_i = n_i - |c_i| drive every separability statement in this
    package.
    """

    n1: float
    n2: float
    c1: float
    c2: float

    @property
    def delta1(self) -> float:
        return self.n1 - abs(self.c1)

    @property
    def delta2(self) -> float:
        return self.n2 - abs(self.c2)

    def to_state(self) -> GaussianState:
        V = np.diag([self.n1, self.n2, self.n1, self.n2]).astype(float)
        V[0, 2] = V[2, 0] = self.c1
        V[1, 3] = V[3, 1] = self.c2
        return GaussianState(V)


def to_standard_form_params(state: GaussianState, tol: float = TOL_FORM) -> StandardFormParams:
    """Read (n1, n2, c1, c2) off a two-mode covariance already in standard form.

    This is a pattern check, not a reduction: covariances with structure
    outside the (n1, n2, c1, c2) slots raise FormMismatch.
    """
    if state.n_modes != 2:
        raise FormMismatch(f"standard form is defined for 2 modes, state has {state.n_modes}")
    V = state.V
    n1, n2 = V[0, 0], V[1, 1]
    pattern = np.diag([n1, n2, n1, n2])
    pattern[0, 2] = pattern[2, 0] = V[0, 2]
    pattern[1, 3] = pattern[3, 1] = V[1, 3]
    off = np.max(np.abs(V - pattern))
    if off > tol:
        raise FormMismatch(f"off-pattern entry of size {off:.3e} exceeds {tol:.0e}")
    return StandardFormParams(n1=n1, n2=n2, c1=V[0, 2], c2=V[1, 3])
