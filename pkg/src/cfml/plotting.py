"""Static SVG figures for the report commands.

Each data series is drawn as one marker line with a fixed ``gid`` so the
emitted SVG holds exactly one ``<use>`` element per plotted point.
"""

from __future__ import annotations

import io

import matplotlib
import numpy as np

matplotlib.use("Agg")
from matplotlib.figure import Figure  # noqa: E402

from .io import atomic_write  # noqa: E402

RATIO_GID = "ratio-points"
EQUI_GID = "equi-points"
GROWTH_GID = "growth-points"

STYLE = {
    "svg.hashsalt": "cfml",
    "svg.fonttype": "path",
    "font.size": 9.0,
    "axes.titlesize": 10.0,
    "axes.labelsize": 9.0,
    "xtick.labelsize": 8.0,
    "ytick.labelsize": 8.0,
}


def _save_svg(fig: Figure, path) -> None:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    atomic_write(path, buf.getvalue())


def _figure(width=6.4, height=4.0):
    fig = Figure(figsize=(width, height))
    ax = fig.add_subplot(111)
    ax.margins(0.05)
    return fig, ax


def ratio_plot(path, n, ratio, title="exact / heuristic multiplicity") -> None:
    """Scatter of the ratio against ``n`` with a reference line at 1."""
    with matplotlib.rc_context(STYLE):
        fig, ax = _figure()
        ax.plot(n, ratio, linestyle="none", marker=".", markersize=1.0,
                color="tab:blue", gid=RATIO_GID)
        ax.axhline(1.0, color="tab:red", linewidth=0.8, gid="reference-line")
        ax.set_xlabel("n")
        ax.set_ylabel("mult(n) / heuristic(n)")
        ax.set_title(title)
        fig.tight_layout()
        _save_svg(fig, path)


def equidist_plot(path, moduli, normalized) -> None:
    with matplotlib.rc_context(STYLE):
        fig, ax = _figure()
        ax.plot(moduli, normalized, linestyle="none", marker="o", markersize=3.0,
                color="tab:blue", gid=EQUI_GID)
        ax.set_xlabel("modulus m")
        ax.set_ylabel("largest error / |T|")
        ax.set_title("largest deviation from uniform residues")
        fig.tight_layout()
        _save_svg(fig, path)


def growth_plot(path, n, ball, fit, max_points=2000) -> None:
    """Ball counts on log-log axes with the fitted power law.

    Points are thinned to about ``max_points`` geometrically spaced values
    of ``n``.
    """
    n = np.asarray(n)
    ball = np.asarray(ball)
    if len(n) > max_points:
        pick = np.unique(np.geomspace(1, len(n), max_points).astype(np.int64) - 1)
        n, ball = n[pick], ball[pick]
    with matplotlib.rc_context(STYLE):
        fig, ax = _figure()
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.plot(n, ball, linestyle="none", marker=".", markersize=1.5,
                color="tab:blue", gid=GROWTH_GID)
        ax.plot(n, fit.c * n.astype(float) ** fit.two_delta, color="tab:red",
                linewidth=0.8, label=f"{fit.c:.4g} n^{fit.two_delta:.4f}")
        ax.axvline(fit.window_lo, color="0.6", linewidth=0.6, linestyle="--")
        ax.set_xlabel("n")
        ax.set_ylabel("|B_n|")
        ax.legend(loc="upper left")
        fig.tight_layout()
        _save_svg(fig, path)
