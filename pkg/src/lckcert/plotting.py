"""Figure rendering for sweep and cohomology reports.

Static files only (PNG/PDF/SVG by extension), written alongside the
delimited report output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_VERDICT_STYLE = {
    "feasible": ("tab:green", "o"),
    "infeasible": ("tab:red", "x"),
    "undecided": ("tab:gray", "s"),
}


def save_sweep_figure(points, path, title=None):
    """Margin per grid point, colored by verdict.

    `points` is a list of dicts with keys: index, label, kind, margin.
    """
    fig, ax = plt.subplots(figsize=(max(6.0, 0.35 * len(points)), 3.6))
    for kind, (color, marker) in _VERDICT_STYLE.items():
        xs = [p["index"] for p in points if p["kind"] == kind]
        ys = [p.get("margin") or 0.0 for p in points if p["kind"] == kind]
        if xs:
            ax.scatter(xs, ys, c=color, marker=marker, label=kind, zorder=3)
    ax.axhline(0.0, color="k", lw=0.6, zorder=1)
    ax.set_xlabel("grid point")
    ax.set_ylabel("positivity margin")
    if title:
        ax.set_title(title)
    labels = [p["label"] for p in points]
    if len(labels) <= 40:
        ax.set_xticks([p["index"] for p in points])
        ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_betti_figure(betti, path, title=None):
    """Bar chart of twisted Betti numbers per degree."""
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    degrees = list(range(len(betti)))
    ax.bar(degrees, betti, color="tab:blue", width=0.6)
    ax.set_xlabel("degree")
    ax.set_ylabel("twisted Betti number")
    ax.set_xticks(degrees)
    for d, b in zip(degrees, betti):
        ax.text(d, b + 0.04, str(b), ha="center", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
