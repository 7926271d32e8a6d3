"""Monte-Carlo homodyne detection on Gaussian states.

A homodyne detector at local-oscillator phase chi samples the quadrature
x_chi = q cos(chi) + p sin(chi). Detection inefficiency eta is modeled as
uniform loss applied to the state before ideal sampling, so every
estimator below reports properties of the degraded state; callers who
want the bare state must invert the eta map themselves (or use
reconstruct_variance, which reports both).

Reproducibility contract: each logical measurement batch draws from its
own Philox stream keyed by (seed, batch_index). Running the same batch
twice gives identical samples; distinct batch indices are independent.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .states import GaussianState
from .symplectic import apply, apply_loss, beam_split

MIN_SHOTS = 2    # sample variances use ddof=1


def _rng(seed: int, batch_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, batch_index))))


def _check_shots(shots: int) -> None:
    if shots < MIN_SHOTS:
        raise ValueError(f"need at least {MIN_SHOTS} shots, got {shots}")


def _check_eta(eta: float) -> None:
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"detector efficiency must lie in (0, 1], got {eta}")


def _quad_vector(n_modes: int, mode: int, chi: float) -> np.ndarray:
    if not 0 <= mode < n_modes:
        raise ValueError(f"mode {mode} out of range for {n_modes} modes")
    u = np.zeros(2 * n_modes)
    u[2 * mode] = np.cos(chi)
    u[2 * mode + 1] = np.sin(chi)
    return u


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """One batch of homodyne outcomes, single port or a joint pair."""

    values: np.ndarray            # shape (shots,) or (shots, 2)
    modes: tuple
    chis: tuple
    eta: float
    seed: int
    batch_index: int

    @property
    def shots(self) -> int:
        return self.values.shape[0]

    @property
    def joint(self) -> bool:
        return self.values.ndim == 2

    def mean(self):
        return self.values.mean(axis=0)

    def variance(self):
        return self.values.var(axis=0, ddof=1)

    def covariance(self) -> float:
        if not self.joint:
            raise ValueError("covariance needs a joint batch")
        return float(np.cov(self.values[:, 0], self.values[:, 1], ddof=1)[0, 1])

    def se_mean(self):
        return np.sqrt(self.variance() / self.shots)

    def se_variance(self):
        return self.variance() * np.sqrt(2.0 / (self.shots - 1))

    def se_covariance(self) -> float:
        va, vb = self.variance()
        c = self.covariance()
        return float(np.sqrt((va * vb + c * c) / (self.shots - 1)))

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            if self.joint:
                writer.writerow(["shot_index", "value_a", "value_b"])
                for i, (a, b) in enumerate(self.values):
                    writer.writerow([i, repr(float(a)), repr(float(b))])
            else:
                writer.writerow(["shot_index", "value"])
                for i, v in enumerate(self.values):
                    writer.writerow([i, repr(float(v))])


def sample_homodyne(state: GaussianState, mode: int, chi: float, shots: int,
                    seed: int, eta: float = 1.0, batch_index: int = 0) -> SampleBatch:
    """Draw homodyne outcomes of one rotated quadrature."""
    _check_shots(shots)
    _check_eta(eta)
    degraded = apply_loss(state, eta)
    u = _quad_vector(degraded.n_modes, mode, chi)
    mean = float(u @ degraded.d)
    var = float(u @ degraded.V @ u)
    values = _rng(seed, batch_index).normal(mean, np.sqrt(var), shots)
    return SampleBatch(values=values, modes=(mode,), chis=(chi,),
                       eta=eta, seed=seed, batch_index=batch_index)


def sample_joint(state: GaussianState, mode_a: int, chi_a: float, mode_b: int,
                 chi_b: float, shots: int, seed: int, eta: float = 1.0,
                 batch_index: int = 0) -> SampleBatch:
    """Simultaneous homodyne on two distinct modes (one detector each).

    Both detectors share the same efficiency; the loss model is uniform.
    """
    _check_shots(shots)
    _check_eta(eta)
    if mode_a == mode_b:
        raise ValueError("joint sampling needs two distinct modes; "
                         "use the ancilla scheme for same-mode pairs")
    degraded = apply_loss(state, eta)
    ua = _quad_vector(degraded.n_modes, mode_a, chi_a)
    ub = _quad_vector(degraded.n_modes, mode_b, chi_b)
    mean = np.array([ua @ degraded.d, ub @ degraded.d])
    cov = np.array([[ua @ degraded.V @ ua, ua @ degraded.V @ ub],
                    [ub @ degraded.V @ ua, ub @ degraded.V @ ub]])
    values = _rng(seed, batch_index).multivariate_normal(mean, cov, shots)
    return SampleBatch(values=values, modes=(mode_a, mode_b), chis=(chi_a, chi_b),
                       eta=eta, seed=seed, batch_index=batch_index)


@dataclass(frozen=True)
class DeltaEstimate:
    """Sector minima of the measured (degraded) state, with standard errors.

    With efficiency eta the measured state obeys
    delta_measured = eta * delta + 1 - eta; no inversion is applied here.
    """

    delta1: float
    delta2: float
    se_delta1: float
    se_delta2: float
    var_q1: float
    var_q2: float
    cov_q: float
    var_p1: float
    var_p2: float
    cov_p: float
    eta: float
    shots: int
    seed: int


def _delta_from_joint(batch: SampleBatch) -> tuple[float, float]:
    va, vb = batch.variance()
    c = batch.covariance()
    delta = 0.5 * (va + vb) - abs(c)
    # delta-method variance of the estimator, Gaussian fourth moments
    var_hat = (0.5 * va * va + 0.5 * vb * vb + va * vb + 2.0 * c * c
               - 2.0 * abs(c) * (va + vb)) / batch.shots
    return float(delta), float(np.sqrt(max(var_hat, 0.0)))


def estimate_delta(state: GaussianState, eta: float, shots: int, seed: int) -> DeltaEstimate:
    """Estimate (delta1, delta2) of a two-mode state from two joint batches.

    Batch 0 measures (q1, q2), batch 1 measures (p1, p2); each sector
    minimum is (var_a + var_b)/2 - |cov|. Estimates refer to the degraded
    state actually seen by the detectors.
    """
    if state.n_modes != 2:
        raise ValueError("delta estimation is defined for two-mode states")
    q_batch = sample_joint(state, 0, 0.0, 1, 0.0, shots, seed, eta, batch_index=0)
    p_batch = sample_joint(state, 0, np.pi / 2, 1, np.pi / 2, shots, seed, eta, batch_index=1)
    d1, se1 = _delta_from_joint(q_batch)
    d2, se2 = _delta_from_joint(p_batch)
    vq = q_batch.variance()
    vp = p_batch.variance()
    return DeltaEstimate(
        delta1=d1, delta2=d2, se_delta1=se1, se_delta2=se2,
        var_q1=float(vq[0]), var_q2=float(vq[1]), cov_q=q_batch.covariance(),
        var_p1=float(vp[0]), var_p2=float(vp[1]), cov_p=p_batch.covariance(),
        eta=eta, shots=shots, seed=seed)


def split_with_ancilla(state: GaussianState, mode: int) -> GaussianState:
    """Mix one mode with a vacuum ancilla on a balanced beam splitter.

    The ancilla is appended as the last mode. The output correlations obey
    cov(q_mode', p_ancilla) = -cov(q_mode, p_mode) / 2 exactly, which turns
    a same-mode moment into a two-detector observable.
    """
    n = state.n_modes
    if not 0 <= mode < n:
        raise ValueError(f"mode {mode} out of range for {n} modes")
    dim = 2 * (n + 1)
    V = np.eye(dim)
    V[:2 * n, :2 * n] = state.V
    d = np.zeros(dim)
    d[:2 * n] = state.d
    return apply(beam_split(mode, n, np.pi / 4, n_modes=n + 1), GaussianState(V, d))


@dataclass(frozen=True)
class OffdiagEstimate:
    value: float    # estimate of cov(q, p) on the chosen mode
    se: float
    mode: int
    shots: int
    seed: int


def measure_offdiagonal_local(state: GaussianState, mode: int, shots: int, seed: int,
                              eta: float = 1.0, batch_index: int = 0) -> OffdiagEstimate:
    """Estimate the within-mode moment cov(q, p) with two detectors.

    Joint homodyne cannot point two detectors at one mode, so the mode is
    split on a balanced beam splitter against vacuum and the estimate is
    -2 * cov(q_out, p_ancilla).
    """
    _check_eta(eta)
    degraded = apply_loss(state, eta)
    mixed = split_with_ancilla(degraded, mode)
    anc = degraded.n_modes
    batch = sample_joint(mixed, mode, 0.0, anc, np.pi / 2, shots, seed,
                         eta=1.0, batch_index=batch_index)
    return OffdiagEstimate(value=-2.0 * batch.covariance(),
                           se=2.0 * batch.se_covariance(),
                           mode=mode, shots=shots, seed=seed)


@dataclass(frozen=True, eq=False)
class VarianceReconstruction:
    """Full 4x4 covariance estimate of a two-mode state under loss."""

    V_meas: np.ndarray        # covariance of the degraded state
    V_se: np.ndarray          # entrywise standard errors of V_meas
    V_inverted: np.ndarray    # (V_meas - (1 - eta) I) / eta
    d_meas: np.ndarray
    eta: float
    shots_per_setting: int
    seed: int


def reconstruct_variance(state: GaussianState, eta: float, shots_per_setting: int,
                         seed: int) -> VarianceReconstruction:
    """Estimate every entry of a two-mode covariance from homodyne batches.

    Ten batches with fixed indices: 0-3 single-port settings for the
    diagonal (q1, p1, q2, p2), 4-7 joint settings for the cross-mode block
    ((q1,q2), (p1,p2), (q1,p2), (p1,q2)), 8-9 ancilla schemes for the
    within-mode moments of modes 0 and 1.
    """
    if state.n_modes != 2:
        raise ValueError("variance reconstruction is defined for two-mode states")
    _check_eta(eta)
    N = shots_per_setting
    V = np.zeros((4, 4))
    se = np.zeros((4, 4))
    d = np.zeros(4)

    quads = [(0, 0.0), (0, np.pi / 2), (1, 0.0), (1, np.pi / 2)]    # q1 p1 q2 p2
    for i, (mode, chi) in enumerate(quads):
        batch = sample_homodyne(state, mode, chi, N, seed, eta, batch_index=i)
        V[i, i] = batch.variance()
        se[i, i] = batch.se_variance()
        d[i] = batch.mean()

    joints = [((0, 0.0), (1, 0.0), 0, 2), ((0, np.pi / 2), (1, np.pi / 2), 1, 3),
              ((0, 0.0), (1, np.pi / 2), 0, 3), ((0, np.pi / 2), (1, 0.0), 1, 2)]
    for k, ((ma, ca), (mb, cb), i, j) in enumerate(joints):
        batch = sample_joint(state, ma, ca, mb, cb, N, seed, eta, batch_index=4 + k)
        V[i, j] = V[j, i] = batch.covariance()
        se[i, j] = se[j, i] = batch.se_covariance()

    for m in (0, 1):
        est = measure_offdiagonal_local(state, m, N, seed, eta, batch_index=8 + m)
        i = 2 * m
        V[i, i + 1] = V[i + 1, i] = est.value
        se[i, i + 1] = se[i + 1, i] = est.se

    inverted = (V - (1.0 - eta) * np.eye(4)) / eta
    return VarianceReconstruction(V_meas=V, V_se=se, V_inverted=inverted, d_meas=d,
                                  eta=eta, shots_per_setting=N, seed=seed)
