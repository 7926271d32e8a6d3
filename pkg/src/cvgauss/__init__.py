"""Gaussian-state toolkit: covariance-matrix analysis of entanglement,
purity, and fidelity, with simulated homodyne detection and a truncated
number-basis brute-force check.

Conventions (fixed package-wide): quadratures q = a + a*, p = i(a* - a),
vacuum variance 1, mode ordering (q0, p0, q1, p1, ...), 0-based modes.
"""

from .entanglement import (REGION_FRAGILE, REGION_ROBUST, REGION_SEPARABLE,
                           EntanglementReport, ReidVerdict, analyze,
                           classify_region, critical_efficiency,
                           delta_under_loss, negativity_lemma1,
                           negativity_sympl, partial_transpose,
                           reid_drummond, separable_ppt, symplectic_spectrum)
from .errors import (ConfigError, CutoffTooSmall, CVGaussError, FormMismatch,
                     UnphysicalStateError)
from .fock import (FockDensity, oracle_build, oracle_fidelity,
                   oracle_negativity, oracle_purity, oracle_variance)
from .homodyne import (DeltaEstimate, OffdiagEstimate, SampleBatch,
                       VarianceReconstruction, estimate_delta,
                       measure_offdiagonal_local, reconstruct_variance,
                       sample_homodyne, sample_joint, split_with_ancilla)
from .measures import (FidelityResult, MixednessVerdict, PurityResult,
                       fidelity_closed_form, fidelity_homodyne_expression,
                       fidelity_via_bs, fidelity_via_homodyne,
                       mixedness_separability, purity)
from .recipes import build_state, oracle_representable, validate_recipe
from .states import (GaussianState, PhysicalityReport, StandardFormParams,
                     char_fn, symplectic_form, thermal,
                     to_standard_form_params, vacuum, validate_physical)
from .symplectic import (Displacement, SymplecticMap, apply, apply_loss,
                         beam_split, compose, displace, rotate,
                         squeeze_single, two_mode_squeeze)

__version__ = "0.1.0"

__all__ = [
    "CVGaussError", "ConfigError", "CutoffTooSmall", "FormMismatch",
    "UnphysicalStateError",
    "GaussianState", "PhysicalityReport", "StandardFormParams",
    "symplectic_form", "vacuum", "thermal", "char_fn", "validate_physical",
    "to_standard_form_params",
    "SymplecticMap", "Displacement", "squeeze_single", "rotate",
    "two_mode_squeeze", "beam_split", "displace", "compose", "apply",
    "apply_loss",
    "FidelityResult", "PurityResult", "MixednessVerdict", "purity",
    "fidelity_closed_form", "fidelity_via_bs", "fidelity_via_homodyne",
    "fidelity_homodyne_expression", "mixedness_separability",
    "EntanglementReport", "ReidVerdict", "REGION_SEPARABLE", "REGION_ROBUST",
    "REGION_FRAGILE", "partial_transpose", "symplectic_spectrum",
    "negativity_sympl", "negativity_lemma1", "separable_ppt",
    "delta_under_loss", "classify_region", "critical_efficiency",
    "reid_drummond", "analyze",
    "FockDensity", "oracle_build", "oracle_purity", "oracle_fidelity",
    "oracle_variance", "oracle_negativity",
    "SampleBatch", "DeltaEstimate", "OffdiagEstimate",
    "VarianceReconstruction", "sample_homodyne", "sample_joint",
    "estimate_delta", "split_with_ancilla", "measure_offdiagonal_local",
    "reconstruct_variance",
    "build_state", "validate_recipe", "oracle_representable",
]
