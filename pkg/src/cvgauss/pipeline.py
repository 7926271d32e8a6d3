"""Turns a validated config into run / sweep / oracle-check reports.

All numbers entering a report are converted to plain Python floats so the
JSON layer never sees numpy scalars. Reports are deterministic for a
fixed config and seed except for the created_at stamp.
"""

from __future__ import annotations

import importlib.metadata
from datetime import datetime, timezone

import numpy as np
import scipy

from . import entanglement, fock, homodyne, measures, recipes
from .config import ANALYSES, ExperimentConfig
from .errors import ConfigError, CutoffTooSmall, FormMismatch
from .states import GaussianState, to_standard_form_params, validate_physical

# agreement thresholds for oracle cross-checks; diffs are reported either
# way, these only set the ok flags
ORACLE_TOL_PURITY = 1e-5
ORACLE_TOL_VARIANCE = 1e-4
ORACLE_TOL_NEGATIVITY = 1e-3    # relative, floored at scale 1
ORACLE_TOL_FIDELITY = 1e-6

_NEEDS_TWO_MODES = "needs a two-mode state"
_NEEDS_STANDARD_FORM = ("needs the two-mode standard form "
                        "(diagonal local blocks, q-q and p-p correlations only)")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _versions() -> dict:
    try:
        pkg = importlib.metadata.version("cvgauss")
    except importlib.metadata.PackageNotFoundError:
        pkg = "0+unknown"
    return {"cvgauss": pkg, "numpy": np.__version__, "scipy": scipy.__version__}


def _state_block(state: GaussianState) -> dict:
    phys = validate_physical(state)
    return {
        "n_modes": state.n_modes,
        "covariance": state.V.tolist(),
        "mean": state.d.tolist(),
        "physical": bool(phys.physical),
        "min_eigenvalue": float(phys.min_eigenvalue),
    }


def _not_applicable(reason: str) -> dict:
    return {"applicable": False, "reason": reason}


def _analysis_purity(cfg, state, params) -> dict:
    result = measures.purity(state)
    return {"applicable": True, "purity": float(result.purity),
            "mixedness": float(result.mixedness),
            "mixedness_quad": float(result.mixedness_quad)}


def _analysis_mixedness(cfg, state, params) -> dict:
    if params is None:
        return _not_applicable(_NEEDS_STANDARD_FORM)
    verdict = measures.mixedness_separability(params)
    return {"applicable": True,
            "separable": verdict.separable,
            "lhs": float(verdict.lhs), "threshold": float(verdict.threshold),
            "precondition_ok": bool(verdict.precondition_ok),
            "m12": float(verdict.m12), "m1": float(verdict.m1), "m2": float(verdict.m2)}


def _analysis_entanglement(cfg, state, params) -> dict:
    if state.n_modes != 2:
        return _not_applicable(_NEEDS_TWO_MODES)
    rep = entanglement.analyze(state)
    block = {"applicable": True, "E_sympl": float(rep.E_sympl),
             "nu_tilde": [float(x) for x in rep.nu_tilde],
             "separable": bool(rep.separable)}
    if rep.standard_form:
        block["E_lemma1"] = float(rep.E_lemma1)
    return block


def _analysis_region(cfg, state, params) -> dict:
    if params is None:
        return _not_applicable(_NEEDS_STANDARD_FORM)
    region = entanglement.classify_region(params.delta1, params.delta2)
    return {"applicable": True, "delta1": float(params.delta1),
            "delta2": float(params.delta2), "region": region}


def _analysis_critical_efficiency(cfg, state, params) -> dict:
    if params is None:
        return _not_applicable(_NEEDS_STANDARD_FORM)
    region = entanglement.classify_region(params.delta1, params.delta2)
    if region == entanglement.REGION_SEPARABLE:
        return {"applicable": True, "eta_critical": None,
                "note": "separable at every efficiency"}
    eta = entanglement.critical_efficiency(params.delta1, params.delta2)
    note = ("entangled at every positive efficiency"
            if region == entanglement.REGION_ROBUST
            else "separable below eta_critical")
    return {"applicable": True, "eta_critical": float(eta), "note": note}


def _analysis_reid(cfg, state, params) -> dict:
    if params is None:
        return _not_applicable(_NEEDS_STANDARD_FORM)
    verdict = entanglement.reid_drummond(params)
    return {"applicable": True, "detected": bool(verdict.detected),
            "cond_var_q": float(verdict.cond_var_q),
            "cond_var_p": float(verdict.cond_var_p)}


def _analysis_fidelity(cfg, state, params) -> dict:
    # config validation already pinned both recipes to one mode each
    ref = recipes.build_state(cfg.reference)
    routes = {r.route: r for r in (measures.fidelity_closed_form(state, ref),
                                   measures.fidelity_via_bs(state, ref),
                                   measures.fidelity_via_homodyne(state, ref))}
    values = {name: float(r.value) for name, r in routes.items()}
    spread = max(values.values()) - min(values.values())
    closed = routes[measures.ROUTE_CLOSED_FORM]
    return {"applicable": True, "value": float(closed.value), "routes": values,
            "max_route_spread": float(spread),
            "overlap_only": bool(closed.overlap_only)}


_ANALYSIS_FNS = {
    "purity": _analysis_purity,
    "mixedness": _analysis_mixedness,
    "entanglement": _analysis_entanglement,
    "region": _analysis_region,
    "critical_efficiency": _analysis_critical_efficiency,
    "reid_drummond": _analysis_reid,
    "fidelity": _analysis_fidelity,
}


def _sampling_block(cfg: ExperimentConfig, state: GaussianState) -> dict | None:
    wanted = cfg.estimate_delta or cfg.reconstruct_variance or cfg.offdiagonal_mode is not None
    if not wanted:
        return None
    block = {"efficiency": float(cfg.efficiency), "shots": cfg.shots, "seed": cfg.seed}
    if cfg.estimate_delta:
        est = homodyne.estimate_delta(state, cfg.efficiency, cfg.shots, cfg.seed)
        product = float(est.delta1 * est.delta2)
        block["delta_estimate"] = {
            "delta1": float(est.delta1), "delta2": float(est.delta2),
            "se_delta1": float(est.se_delta1), "se_delta2": float(est.se_delta2),
            "product": product,
            "separable_estimate": bool(product >= 1.0),
            # estimates are of the loss-degraded state, so this is the
            # region as seen by the detector
            "region_estimate": entanglement.classify_region(
                max(est.delta1, 1e-12), max(est.delta2, 1e-12)),
        }
    if cfg.reconstruct_variance:
        rec = homodyne.reconstruct_variance(state, cfg.efficiency, cfg.shots, cfg.seed)
        block["variance_reconstruction"] = {
            "V_measured": rec.V_meas.tolist(), "V_se": rec.V_se.tolist(),
            "V_inverted": rec.V_inverted.tolist(), "mean_measured": rec.d_meas.tolist(),
            "max_error_vs_true": float(np.max(np.abs(rec.V_inverted - state.V))),
        }
    if cfg.offdiagonal_mode is not None:
        m = cfg.offdiagonal_mode
        est = homodyne.measure_offdiagonal_local(state, m, cfg.shots, cfg.seed, cfg.efficiency)
        block["offdiagonal"] = {
            "mode": m, "estimate": float(est.value), "se": float(est.se),
            "exact_after_loss": float(cfg.efficiency * state.V[2 * m, 2 * m + 1]),
        }
    return block


def _oracle_checks(cfg: ExperimentConfig) -> tuple[list, bool]:
    targets = [("state", cfg.require_state())]
    if cfg.reference is not None:
        targets.append(("reference", cfg.reference))
    checks: list[dict] = []
    built: dict[str, fock.FockDensity] = {}
    states: dict[str, GaussianState] = {}
    passed = True

    for label, recipe in targets:
        entry: dict = {"target": label}
        if not recipes.oracle_representable(recipe):
            entry["status"] = "not_representable"
            entry["note"] = "the brute-force check covers one- and two-mode states"
            checks.append(entry)
            passed = False
            continue
        try:
            fd = fock.oracle_build(recipe, cfg.oracle_cutoff)
        except ValueError as exc:
            # an explicit oracle_cutoff outside the allowed range is a
            # config problem, not a physics one
            raise ConfigError(str(exc)) from exc
        except CutoffTooSmall as exc:
            entry["status"] = "cutoff_too_small"
            entry["tail_mass"] = float(exc.tail_mass)
            checks.append(entry)
            passed = False
            continue
        state = recipes.build_state(recipe)
        built[label], states[label] = fd, state
        entry.update(status="ok", cutoff=fd.cutoff,
                     tail_mass=float(fd.tail_mass),
                     trace_deficit=float(fd.trace_deficit))

        p_cl = float(measures.purity(state).purity)
        p_or = float(fock.oracle_purity(fd))
        entry["purity"] = {"closed_form": p_cl, "oracle": p_or,
                           "abs_diff": abs(p_cl - p_or),
                           "ok": abs(p_cl - p_or) <= ORACLE_TOL_PURITY}

        V_or, d_or = fock.oracle_variance(fd)
        vdiff = float(max(np.max(np.abs(state.V - V_or)), np.max(np.abs(state.d - d_or))))
        entry["variance"] = {"max_abs_diff": vdiff, "ok": vdiff <= ORACLE_TOL_VARIANCE}

        if state.n_modes == 2:
            e_cl, _ = entanglement.negativity_sympl(state)
            e_or = float(fock.oracle_negativity(fd))
            rel = abs(e_cl - e_or) / max(abs(e_cl), 1.0)
            entry["negativity"] = {"closed_form": float(e_cl), "oracle": e_or,
                                   "rel_diff": rel, "ok": rel <= ORACLE_TOL_NEGATIVITY}
        checks.append(entry)

    if ("state" in built and "reference" in built
            and states["state"].n_modes == 1 and states["reference"].n_modes == 1):
        f_cl = measures.fidelity_closed_form(states["state"], states["reference"])
        f_or, both_mixed = fock.oracle_fidelity(built["state"], built["reference"])
        diff = abs(float(f_cl.value) - float(f_or))
        checks.append({"target": "fidelity",
                       "closed_form": float(f_cl.value), "oracle": float(f_or),
                       "abs_diff": diff, "overlap_only": bool(both_mixed),
                       "ok": diff <= ORACLE_TOL_FIDELITY})

    for entry in checks:
        if entry.get("ok") is False:
            passed = False
        for value in entry.values():
            if isinstance(value, dict) and not value.get("ok", True):
                passed = False
    return checks, passed


def run_experiment(cfg: ExperimentConfig) -> dict:
    state = recipes.build_state(cfg.require_state())
    params = None
    if state.n_modes == 2:
        try:
            params = to_standard_form_params(state)
        except FormMismatch:
            params = None

    analyses = {name: _ANALYSIS_FNS[name](cfg, state, params)
                for name in ANALYSES if name in cfg.analyses}
    oracle = None
    if cfg.oracle_check:
        checks, ok = _oracle_checks(cfg)
        oracle = {"checks": checks, "passed": ok}
    return {
        "kind": "run_report",
        "created_at": _now(),
        "seed": cfg.seed,
        "versions": _versions(),
        "config": cfg.raw,
        "state": _state_block(state),
        "analyses": analyses,
        "sampling": _sampling_block(cfg, state),
        "oracle": oracle,
    }


def sweep_experiment(cfg: ExperimentConfig) -> dict:
    """Region and loss-threshold map over a (delta1, delta2) grid."""
    sweep = cfg.require_sweep()
    d1 = np.linspace(sweep["delta1"]["start"], sweep["delta1"]["stop"],
                     sweep["delta1"]["steps"])
    d2 = np.linspace(sweep["delta2"]["start"], sweep["delta2"]["stop"],
                     sweep["delta2"]["steps"])
    rows = []
    for a in d1:
        for b in d2:
            region = entanglement.classify_region(float(a), float(b))
            eta = (None if region == entanglement.REGION_SEPARABLE
                   else float(entanglement.critical_efficiency(float(a), float(b))))
            rows.append({"delta1": float(a), "delta2": float(b),
                         "region": region, "eta_critical": eta})
    return {"kind": "sweep_report", "created_at": _now(),
            "grid": sweep, "rows": rows}


def oracle_experiment(cfg: ExperimentConfig) -> dict:
    checks, passed = _oracle_checks(cfg)
    return {"kind": "oracle_report", "created_at": _now(), "seed": cfg.seed,
            "versions": _versions(), "checks": checks, "passed": passed}
