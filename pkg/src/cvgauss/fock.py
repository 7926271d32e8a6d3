"""Brute-force oracle in a truncated Fock basis.

Everything here is deliberately naive: states are dense density matrices
built by exponentiating quadratic generators, and every figure of merit
is a trace formula. The only subtlety is honesty about truncation: each
build measures how much population sits near the edge of the basis and
refuses to answer when that tail is not negligible.

Supports one and two modes. Index convention for two modes: basis state
|n1, n2> lives at flat index n1 * N + n2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CutoffTooSmall, UnphysicalStateError

TAIL_LIMIT = 1e-6
EDGE_FRACTION = 0.9        # states with any index >= ceil(0.9 N) count as tail
AUTO_START = 20
MAX_CUTOFF = {1: 80, 2: 45}


@dataclass(frozen=True, eq=False)
class FockDensity:
    """Dense density matrix with its basis bookkeeping."""

    rho: np.ndarray
    n_modes: int
    cutoff: int
    tail_mass: float
    trace_deficit: float    # 1 - tr(rho), reported but never renormalized


def _annihilator(N: int) -> np.ndarray:
    a = np.zeros((N, N))
    ns = np.arange(1, N)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def _embed(op: np.ndarray, mode: int, n_modes: int) -> np.ndarray:
    if n_modes == 1:
        return op
    eye = np.eye(op.shape[0])
    return np.kron(op, eye) if mode == 0 else np.kron(eye, op)


# Generator eigendecompositions are reused across states of the same cutoff;
# the parameter only scales the phases.
_GEN_CACHE: dict = {}


def _unitary_from_generator(kind: str, N: int, scale: float) -> np.ndarray:
    """exp(scale * K) for the anti-Hermitian generator K named by kind.

    Diagonalizing iK (Hermitian) once gives U = Q exp(-i scale L) Q+, which
    is exactly unitary regardless of scale.
    """
    key = (kind, N)
    if key not in _GEN_CACHE:
        a = _annihilator(N)
        if kind == "squeeze":
            k = 0.5 * (a @ a - a.T @ a.T)
        elif kind == "two_mode_squeeze":
            a1 = _embed(a, 0, 2)
            a2 = _embed(a, 1, 2)
            k = a1.T @ a2.T - a1 @ a2
        elif kind == "beam_split":
            a1 = _embed(a, 0, 2)
            a2 = _embed(a, 1, 2)
            k = a1.T @ a2 - a1 @ a2.T
        else:
            raise ValueError(f"unknown generator {kind!r}")
        evals, Q = np.linalg.eigh(1j * k)
        _GEN_CACHE[key] = (evals, Q)
    evals, Q = _GEN_CACHE[key]
    return (Q * np.exp(-1j * scale * evals)) @ Q.conj().T


def _rotation(N: int, phi: float) -> np.ndarray:
    return np.diag(np.exp(1j * phi * np.arange(N)))


def _displacement(N: int, dq: float, dp: float) -> np.ndarray:
    alpha = 0.5 * (dq + 1j * dp)
    a = _annihilator(N)
    k = alpha * a.T - np.conj(alpha) * a    # anti-Hermitian
    evals, Q = np.linalg.eigh(1j * k)
    return (Q * np.exp(-1j * evals)) @ Q.conj().T


def _thermal_diag(nt: float, N: int) -> np.ndarray:
    if nt < 1.0:
        raise UnphysicalStateError(f"thermal occupation nt >= 1 required, got {nt}")
    nbar = (nt - 1.0) / 2.0
    if nbar == 0.0:
        p = np.zeros(N)
        p[0] = 1.0
        return p
    ratio = nbar / (nbar + 1.0)
    return ratio ** np.arange(N) / (nbar + 1.0)


def _tail_mass(rho: np.ndarray, n_modes: int, N: int) -> float:
    probs = np.diag(rho).real
    edge = int(np.ceil(EDGE_FRACTION * N))
    if n_modes == 1:
        return float(probs[edge:].sum())
    grid = probs.reshape(N, N)
    keep = grid[:edge, :edge]
    return float(probs.sum() - keep.sum())


def _build_at_cutoff(recipe: list[dict], N: int) -> FockDensity:
    ops = list(recipe)
    if not ops:
        raise ValueError("recipe is empty")
    head = ops[0]
    if head.get("op") == "vacuum":
        n_modes = int(head["modes"])
        occ = [1.0] * n_modes
    elif head.get("op") == "thermal":
        occ = [float(x) for x in head["occupations"]]
        n_modes = len(occ)
    else:
        raise ValueError("recipe must start with a vacuum or thermal initializer")
    if n_modes not in (1, 2):
        raise ValueError(f"the oracle supports 1 or 2 modes, got {n_modes}")

    diag = _thermal_diag(occ[0], N)
    for nt in occ[1:]:
        diag = np.kron(diag, _thermal_diag(nt, N))
    rho = np.diag(diag).astype(complex)

    for op in ops[1:]:
        name = op["op"]
        if name == "squeeze":
            U = _embed(_unitary_from_generator("squeeze", N, float(op["s"])),
                       int(op["mode"]), n_modes)
        elif name == "rotate":
            U = _embed(_rotation(N, float(op["phi"])), int(op["mode"]), n_modes)
        elif name == "two_mode_squeeze":
            if n_modes != 2 or sorted(op["modes"]) != [0, 1]:
                raise ValueError("two_mode_squeeze needs modes [0, 1]")
            U = _unitary_from_generator("two_mode_squeeze", N, float(op["s"]))
            if list(op["modes"]) == [1, 0]:
                U = _swap_conjugate(U, N)
        elif name == "beam_split":
            if n_modes != 2 or sorted(op["modes"]) != [0, 1]:
                raise ValueError("beam_split needs modes [0, 1]")
            U = _unitary_from_generator("beam_split", N, float(op["theta"]))
            if list(op["modes"]) == [1, 0]:
                U = _swap_conjugate(U, N)
        elif name == "displace":
            U = _embed(_displacement(N, float(op["dq"]), float(op["dp"])), int(op["mode"]), n_modes)
        else:
            raise ValueError(f"unknown recipe op {name!r}")
        rho = U @ rho @ U.conj().T

    return FockDensity(rho=rho, n_modes=n_modes, cutoff=N,
                       tail_mass=_tail_mass(rho, n_modes, N),
                       trace_deficit=float(1.0 - np.trace(rho).real))


def _swap_conjugate(U: np.ndarray, N: int) -> np.ndarray:
    """Relabel the two modes of a two-mode operator."""
    dim = N * N
    perm = (np.arange(dim).reshape(N, N).T).reshape(dim)
    return U[np.ix_(perm, perm)]


def oracle_build(recipe: list[dict], cutoff: int | None = None) -> FockDensity:
    """Build the density matrix for a recipe, honestly truncated.

    With an explicit cutoff the build fails (CutoffTooSmall) if the edge
    tail exceeds 1e-6. Without one, the cutoff starts at 20 and doubles
    until the tail is acceptable or the per-mode limit is hit.
    """
    head = recipe[0] if recipe else {}
    n_modes = int(head.get("modes", len(head.get("occupations", [])) or 0)) or 1
    limit = MAX_CUTOFF.get(n_modes, MAX_CUTOFF[2])
    if cutoff is not None:
        if not 2 <= cutoff <= limit:
            raise ValueError(f"cutoff must lie in [2, {limit}] for {n_modes} mode(s)")
        fd = _build_at_cutoff(recipe, cutoff)
        if fd.tail_mass >= TAIL_LIMIT:
            raise CutoffTooSmall(
                f"tail mass {fd.tail_mass:.3e} at cutoff {cutoff}", fd.tail_mass)
        return fd
    N = AUTO_START
    while True:
        N = min(N, limit)
        fd = _build_at_cutoff(recipe, N)
        if fd.tail_mass < TAIL_LIMIT:
            return fd
        if N >= limit:
            raise CutoffTooSmall(
                f"tail mass {fd.tail_mass:.3e} even at the cutoff limit {limit}", fd.tail_mass)
        N *= 2


def _require_clean(fd: FockDensity) -> None:
    if fd.tail_mass >= TAIL_LIMIT:
        raise CutoffTooSmall(f"tail mass {fd.tail_mass:.3e} too large", fd.tail_mass)


def _quadratures(N: int, n_modes: int) -> list[np.ndarray]:
    a = _annihilator(N)
    q = a + a.T
    p = 1j * (a.T - a)
    out = []
    for m in range(n_modes):
        out.append(_embed(q, m, n_modes))
        out.append(_embed(p.astype(complex), m, n_modes))
    return out


def oracle_purity(fd: FockDensity) -> float:
    _require_clean(fd)
    return float(np.einsum("ij,ji->", fd.rho, fd.rho).real)


def oracle_fidelity(fd1: FockDensity, fd2: FockDensity) -> tuple[float, bool]:
    """Tr(rho1 rho2) and a flag set when neither input is pure.

    The trace equals the fidelity when at least one state is pure;
    otherwise it is only their overlap (flag True).
    """
    _require_clean(fd1)
    _require_clean(fd2)
    if fd1.rho.shape != fd2.rho.shape:
        raise ValueError("states live in different truncated bases")
    value = float(np.einsum("ij,ji->", fd1.rho, fd2.rho).real)
    both_mixed = oracle_purity(fd1) < 1.0 - 1e-6 and oracle_purity(fd2) < 1.0 - 1e-6
    return value, both_mixed


def oracle_variance(fd: FockDensity) -> tuple[np.ndarray, np.ndarray]:
    """Covariance matrix and mean vector from symmetrized second moments."""
    _require_clean(fd)
    N, n_modes = fd.cutoff, fd.n_modes
    quads = _quadratures(N, n_modes)
    d = np.array([np.trace(fd.rho @ x).real for x in quads])
    dim = 2 * n_modes
    V = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            sym = 0.5 * (quads[i] @ quads[j] + quads[j] @ quads[i])
            V[i, j] = V[j, i] = np.trace(fd.rho @ sym).real - d[i] * d[j]
    return V, d


def oracle_negativity(fd: FockDensity) -> float:
    """Trace-norm negativity degree of the partial transpose, ||rho^T2|| - 1."""
    _require_clean(fd)
    if fd.n_modes != 2:
        raise ValueError("PT negativity needs a two-mode state")
    N = fd.cutoff
    pt = fd.rho.reshape(N, N, N, N).transpose(0, 3, 2, 1).reshape(N * N, N * N)
    evals = np.linalg.eigvalsh(pt)
    return float(np.abs(evals).sum() - 1.0)
