"""Figure rendering for run and sweep reports.

Figures are a side channel: everything in them is also in the report, so
rendering failures should never invalidate a run. The CLI treats these as
best-effort and the Agg backend keeps them headless-safe.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

REGION_COLORS = {"S": "#9e9e9e", "E": "#1f77b4", "E_prime": "#ff7f0e"}
REGION_LABELS = {"S": "separable", "E": "robustly entangled",
                 "E_prime": "loss-fragile"}


def _quadrature_labels(n_modes: int) -> list[str]:
    labels = []
    for m in range(n_modes):
        labels.extend([f"q{m}", f"p{m}"])
    return labels


def plot_run_summary(report: dict, path: str) -> None:
    """Covariance heatmap plus the headline scalars of a run report."""
    V = np.asarray(report["state"]["covariance"])
    labels = _quadrature_labels(report["state"]["n_modes"])

    fig, (ax_v, ax_txt) = plt.subplots(
        1, 2, figsize=(9.0, 4.2), gridspec_kw={"width_ratios": [1.0, 1.1]})

    vmax = np.max(np.abs(V))
    im = ax_v.imshow(V, cmap="RdBu_r", vmin=-vmax, vmax=vmax)
    ax_v.set_xticks(range(len(labels)), labels)
    ax_v.set_yticks(range(len(labels)), labels)
    ax_v.set_title("covariance matrix")
    for i in range(V.shape[0]):
        for j in range(V.shape[1]):
            ax_v.text(j, i, f"{V[i, j]:.2f}", ha="center", va="center", fontsize=8)
    fig.colorbar(im, ax=ax_v, fraction=0.046)

    lines = []
    analyses = report.get("analyses", {})
    pur = analyses.get("purity")
    if pur and pur.get("applicable"):
        lines.append(f"purity P = {pur['purity']:.6g}")
        lines.append(f"mixedness (quadratic) = {pur['mixedness_quad']:.6g}")
    ent = analyses.get("entanglement")
    if ent and ent.get("applicable"):
        nus = ", ".join(f"{x:.6g}" for x in ent["nu_tilde"])
        lines.append(f"E = {ent['E_sympl']:.6g}   (nu_tilde: {nus})")
        lines.append(f"separable: {ent['separable']}")
    reg = analyses.get("region")
    if reg and reg.get("applicable"):
        lines.append(f"region {reg['region']}   "
                     f"delta = ({reg['delta1']:.4g}, {reg['delta2']:.4g})")
    crit = analyses.get("critical_efficiency")
    if crit and crit.get("applicable") and crit.get("eta_critical") is not None:
        lines.append(f"eta_critical = {crit['eta_critical']:.6g}")
    sampling = report.get("sampling") or {}
    est = sampling.get("delta_estimate")
    if est:
        lines.append("")
        lines.append(f"sampled at eta = {sampling['efficiency']:.3g}, "
                     f"{sampling['shots']} shots:")
        lines.append(f"  delta1 = {est['delta1']:.4g} +- {2 * est['se_delta1']:.2g} (2 SE)")
        lines.append(f"  delta2 = {est['delta2']:.4g} +- {2 * est['se_delta2']:.2g} (2 SE)")

    ax_txt.axis("off")
    ax_txt.text(0.02, 0.98, "\n".join(lines) or "no applicable analyses",
                transform=ax_txt.transAxes, va="top", family="monospace", fontsize=10)
    ax_txt.set_title("summary")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_region_map(report: dict, path: str) -> None:
    """Scatter of the sweep grid colored by region, with both boundaries."""
    rows = report["rows"]
    fig, ax = plt.subplots(figsize=(6.0, 5.2))

    seen = []
    for region in ("S", "E", "E_prime"):
        pts = [(r["delta1"], r["delta2"]) for r in rows if r["region"] == region]
        if not pts:
            continue
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=18, c=REGION_COLORS[region],
                   label=REGION_LABELS[region])
        seen.append(region)

    d1 = [r["delta1"] for r in rows]
    d2 = [r["delta2"] for r in rows]
    lo = min(min(d1), min(d2))
    hi = max(max(d1), max(d2))
    span = hi - lo if hi > lo else max(hi, 1.0)
    if hi > lo:
        xs = np.linspace(max(lo, 1.0 / hi), hi, 300)
        ax.plot(xs, 1.0 / xs, "k--", lw=1.0, label="delta1*delta2 = 1")
        if 2.0 - lo > lo:
            xs2 = np.linspace(lo, min(hi, 2.0 - lo), 2)
            ax.plot(xs2, 2.0 - xs2, "k:", lw=1.0, label="delta1+delta2 = 2")

    ax.set_xlim(lo - 0.05 * span, hi + 0.05 * span)
    ax.set_ylim(lo - 0.05 * span, hi + 0.05 * span)
    ax.set_xlabel("delta1")
    ax.set_ylabel("delta2")
    ax.set_title("loss-robustness regions")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
