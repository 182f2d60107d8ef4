"""The seven figure renderers.

Every renderer takes the report directory and the output path, reads the
relevant CSV/JSON files, and writes one PNG.  Guide-circle radii come from
the N echoed in the reports, never from the plotted data.  Styling is
fixed so a re-render of the same inputs is pixel-identical.
"""

from __future__ import annotations

import os
import re

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reports import FigplotError, read_nonempty, read_summary

DPI = 150

# the three-regime guide radii, as multiples of 1/N inside the circle
GUIDE_DEPTHS = (2.0, 4.0)


def _save(fig, out_path):
    fig.savefig(out_path, dpi=DPI)
    plt.close(fig)


def _radial_hist_files(indir):
    """All radial_N<k>_hist.csv files in the directory, sorted by N."""
    found = []
    for name in os.listdir(indir):
        m = re.fullmatch(r"radial_N(\d+)_hist\.csv", name)
        if m:
            found.append((int(m.group(1)), os.path.join(indir, name)))
    if not found:
        raise FigplotError(f"{indir}: no radial_N*_hist.csv files")
    return sorted(found)


def _hist_arrays(report):
    edges = np.append(np.asarray(report.columns["left_edge"], dtype=float),
                      float(report.columns["right_edge"][-1]))
    dens = np.asarray(report.columns["density"], dtype=float)
    return edges, dens


def _circle(ax, radius, **kw):
    t = np.linspace(0.0, 2.0 * np.pi, 512)
    ax.plot(radius * np.cos(t), radius * np.sin(t), **kw)


def _disc_axes(ax):
    ax.set_aspect("equal")
    ax.set_xlim(-1.15, 1.15)
    ax.set_ylim(-1.15, 1.15)


def figure1(indir, out_path):
    """Single-panel radial density histogram (smallest N present)."""
    n, path = _radial_hist_files(indir)[0]
    edges, dens = _hist_arrays(read_nonempty(path))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.stairs(dens, edges, fill=True, color="#4878cf", alpha=0.8)
    ax.set_xlabel(f"{n} (1 - |z'|)")
    ax.set_ylabel("density")
    ax.set_xlim(edges[0], edges[-1])
    _save(fig, out_path)


def figure2(indir, out_path):
    """Superimposed radial densities for every N present, with octile
    guides (dotted vertical lines) from summary.json."""
    files = _radial_hist_files(indir)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for n, path in files:
        edges, dens = _hist_arrays(read_nonempty(path))
        centers = 0.5 * (edges[:-1] + edges[1:])
        ax.plot(centers, dens, lw=1.2, label=f"N={n}")
    summary_path = os.path.join(indir, "summary.json")
    if os.path.exists(summary_path):
        summary = read_summary(summary_path)
        for q in summary.get("octiles") or []:
            ax.axvline(q, color="k", ls=":", lw=0.8)
    ax.set_xlabel("N (1 - |z'|)")
    ax.set_ylabel("density")
    ax.legend(loc="upper right")
    _save(fig, out_path)


def figure3(indir, out_path):
    """Perturbation scatter: blue dots for derivative zeros across trials,
    red squares for the fixed base roots, dotted guide circles."""
    pts = read_nonempty(os.path.join(indir, "perturb_points.csv"))
    base = read_nonempty(os.path.join(indir, "perturb_base.csv"))
    summary = read_summary(os.path.join(indir, "summary.json"))
    n = summary["config"]["N"]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(pts.columns["re"], pts.columns["im"], ".", color="#1f4fd0",
            ms=1.5, rasterized=False)
    ax.plot(base.columns["re"], base.columns["im"], "s", color="#d62728",
            ms=5, mfc="none", mew=1.2)
    _circle(ax, 1.0, color="k", lw=0.8)
    for depth in GUIDE_DEPTHS:
        _circle(ax, 1.0 - depth / n, color="k", ls=":", lw=0.8)
    _disc_axes(ax)
    _save(fig, out_path)


def figure4(indir, out_path):
    """One spectrum with the target circles of its wide triples."""
    snap = read_nonempty(os.path.join(indir, "special_snapshot.csv"))
    n = snap.config["N"]
    kind = np.asarray(snap.columns["kind_code"])
    re_ = np.asarray(snap.columns["re"], dtype=float)
    im = np.asarray(snap.columns["im"], dtype=float)
    fig, ax = plt.subplots(figsize=(6, 6))
    _circle(ax, 1.0, color="0.6", lw=0.8)
    ax.plot(re_[kind == 0], im[kind == 0], "o", color="k", ms=4)
    ax.plot(re_[kind == 1], im[kind == 1], ".", color="#1f4fd0", ms=4)
    t = np.linspace(0.0, 2.0 * np.pi, 256)
    for cx, cy in zip(re_[kind == 2], im[kind == 2]):
        ax.plot(cx + 2.5 / n * np.cos(t), cy + 2.5 / n * np.sin(t),
                color="#d62728", lw=1.0)
    _disc_axes(ax)
    _save(fig, out_path)


def figure5(indir, out_path):
    """Rotated in-disc zeros: point cloud on the left, density on the
    right, with the reference zero's position marked by a black dot."""
    rot = read_nonempty(os.path.join(indir, "special_rotated.csv"))
    re_ = np.asarray(rot.columns["re"], dtype=float)
    im = np.asarray(rot.columns["im"], dtype=float)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 5))
    ax1.plot(re_, im, ".", color="#1f4fd0", ms=2)
    ax1.plot([1.0], [0.0], "o", color="k", ms=6)
    ax1.set_aspect("equal")
    counts, xe, ye = np.histogram2d(re_, im, bins=60)
    ax2.imshow(counts.T, origin="lower", aspect="equal", cmap="viridis",
               extent=[xe[0], xe[-1], ye[0], ye[-1]],
               interpolation="nearest")
    _save(fig, out_path)


def figure6(indir, out_path):
    """Radial histogram of the in-disc derivative zeros."""
    edges, dens = _hist_arrays(
        read_nonempty(os.path.join(indir, "special_hist.csv")))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.stairs(dens, edges, fill=True, color="#4878cf", alpha=0.8)
    ax.set_xlabel("N (1 - |z'|) for in-disc zeros")
    ax.set_ylabel("density")
    ax.set_xlim(edges[0], edges[-1])
    _save(fig, out_path)


def figure7(indir, out_path):
    """Zeros and derivative zeros of the toy polynomials, one panel per n."""
    rep = read_nonempty(os.path.join(indir, "toy_zeros.csv"))
    ns = sorted(set(rep.columns["n"]))
    n_col = np.asarray(rep.columns["n"])
    kind = np.asarray(rep.columns["kind_code"])
    re_ = np.asarray(rep.columns["re"], dtype=float)
    im = np.asarray(rep.columns["im"], dtype=float)
    fig, axes = plt.subplots(1, len(ns), figsize=(5 * len(ns), 5),
                             squeeze=False)
    for ax, n in zip(axes[0], ns):
        sel = n_col == n
        _circle(ax, 1.0, color="0.6", lw=0.8)
        ax.plot(re_[sel & (kind == 0)], im[sel & (kind == 0)], "o",
                color="k", ms=4)
        ax.plot(re_[sel & (kind == 1)], im[sel & (kind == 1)], "x",
                color="#d62728", ms=5)
        ax.set_title(f"n = {n}")
        _disc_axes(ax)
    _save(fig, out_path)


RENDERERS = {
    1: figure1,
    2: figure2,
    3: figure3,
    4: figure4,
    5: figure5,
    6: figure6,
    7: figure7,
}


def render(figure: int, indir, out_path):
    if figure not in RENDERERS:
        raise FigplotError(f"no renderer for figure {figure}")
    if not os.path.isdir(indir):
        raise FigplotError(f"input directory {indir} does not exist")
    RENDERERS[figure](indir, out_path)
