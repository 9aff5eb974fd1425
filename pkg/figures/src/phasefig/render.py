"""Draw a phase diagram from a portrait.json document.

The document layout (named arrays throughout):

    steady_states : [{a, pi, R, classification, ...}]
    isocline_pi   : {name, a: [...], pi: [...]}
    isocline_a    : {name, a: [...], pi: [...]}
    manifolds     : [{name, a, pi}, ...]
    heteroclinic  : {name, a, pi} or null
    basin         : {a0, pi0, labels, resolution} or null

Direction arrows are placed along each manifold and connecting-orbit
polyline, pointing along the stored sample order (which is forward time).
"""

from __future__ import annotations

import json

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

BASIN_COLORS = {
    "trap": "#c6dbef",
    "target": "#fdd0a2",
    "escaped": "#e8e8e8",
    "undecided": "#f7f7f7",
}

MARKERS = {
    "saddle": ("s", "black"),
    "stable node": ("o", "black"),
    "unstable node": ("o", "white"),
    "stable spiral": ("D", "black"),
    "unstable spiral": ("D", "white"),
    "degenerate": ("x", "black"),
}


def _arrows(ax, a, pi, color, n=3):
    """Direction arrows along a polyline, spaced by arc position."""
    a = np.asarray(a, dtype=float)
    pi = np.asarray(pi, dtype=float)
    if len(a) < 3:
        return
    idx = np.linspace(0, len(a) - 2, n + 2).astype(int)[1:-1]
    for i in idx:
        da, dpi = a[i + 1] - a[i], pi[i + 1] - pi[i]
        if da == 0 and dpi == 0:
            continue
        ax.annotate(
            "",
            xy=(a[i] + da, pi[i] + dpi),
            xytext=(a[i], pi[i]),
            arrowprops=dict(arrowstyle="-|>", color=color, lw=1.2),
        )


def _is_vertical(poly) -> bool:
    a = np.asarray(poly["a"], dtype=float)
    return len(a) > 1 and float(np.ptp(a)) < 1e-12


def render_portrait(portrait_path: str, out_path: str) -> dict:
    """Render the document at portrait_path to out_path (.png or .svg).

    Returns a summary dict with the list of drawn layer names.
    """
    with open(portrait_path, encoding="utf-8") as fh:
        doc = json.load(fh)

    fig, ax = plt.subplots(figsize=(7.5, 5.5))
    layers = []

    basin = doc.get("basin")
    if basin:
        res = int(basin["resolution"])
        a0 = np.asarray(basin["a0"], dtype=float).reshape(res, res)
        pi0 = np.asarray(basin["pi0"], dtype=float).reshape(res, res)
        colors = np.array(
            [BASIN_COLORS.get(lbl, "#ffffff") for lbl in basin["labels"]]
        ).reshape(res, res)
        ax.scatter(a0, pi0, c=colors.ravel(), s=14, marker="s", zorder=0)
        layers.append("basin")

    for poly, style in (
        (doc["isocline_pi"], dict(color="tab:blue", lw=1.5)),
        (doc["isocline_a"], dict(color="tab:red", lw=1.5)),
    ):
        if _is_vertical(poly):
            ax.axvline(float(poly["a"][0]), **style)
        else:
            ax.plot(poly["a"], poly["pi"], **style)
        ax.plot([], [], label=poly["name"], **style)
        layers.append(poly["name"])

    for poly in doc.get("manifolds", []):
        ax.plot(poly["a"], poly["pi"], color="tab:green", lw=1.0, ls="--")
        _arrows(ax, poly["a"], poly["pi"], "tab:green")
        layers.append(poly["name"])

    het = doc.get("heteroclinic")
    if het:
        ax.plot(het["a"], het["pi"], color="black", lw=2.0)
        _arrows(ax, het["a"], het["pi"], "black", n=5)
        layers.append("heteroclinic")

    for ss in doc.get("steady_states", []):
        marker, face = MARKERS.get(ss.get("classification", ""), ("o", "gray"))
        ax.plot(ss["a"], ss["pi"], marker=marker, markersize=8,
                markerfacecolor=face, markeredgecolor="black", zorder=5)
        layers.append(f"steady_state:{ss.get('classification', 'unknown')}")

    ax.set_xlabel("government liabilities  a")
    ax.set_ylabel("inflation  $\\pi$")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"out": out_path, "layers": layers}
