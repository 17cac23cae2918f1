"""Figures for the CLI report path. Rendering uses the Agg backend and only
writes files; nothing is shown on screen."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .tableaux import BratteliGraph, dim_std, format_bipartition  # noqa: E402

__all__ = ["plot_bratteli", "plot_dims"]

plt.rcParams["font.size"] = 8
plt.rcParams["font.family"] = "serif"


def _positions(graph: BratteliGraph) -> dict:
    pos = {}
    for level, lams in enumerate(graph.levels):
        width = len(lams)
        for i, lam in enumerate(lams):
            pos[(level, lam)] = (i - (width - 1) / 2, -level)
    return pos


def plot_bratteli(graph: BratteliGraph, path: str | Path) -> Path:
    """Draw the branching graph, one row per level, and save it to ``path``."""
    path = Path(path)
    pos = _positions(graph)
    widest = max(len(lams) for lams in graph.levels)
    fig, ax = plt.subplots(figsize=(max(4.0, 1.3 * widest), 1.2 * len(graph.levels) + 0.6))
    for level, lam, mu in graph.edges:
        (x0, y0), (x1, y1) = pos[(level, lam)], pos[(level + 1, mu)]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=0.7, zorder=1)
    for (level, lam), (x, y) in pos.items():
        ax.text(
            x, y, f"{format_bipartition(lam)}\n{dim_std(lam)}",
            ha="center", va="center", fontsize=6,
            bbox=dict(boxstyle="round,pad=0.25", fc="white", ec="0.3", lw=0.5), zorder=2,
        )
    half = (widest - 1) / 2 + 0.8
    for level, d in enumerate(graph.level_dims()):
        ax.text(half + 0.2, -level, f"dim {d}", ha="left", va="center", fontsize=7)
    ax.set_xlim(-half, half + 1.6)
    ax.set_ylim(-len(graph.levels) + 0.4, 0.6)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_dims(series: dict[str, list[int]], path: str | Path, title: str = "") -> Path:
    """Log-scale line chart of dimension sequences indexed by ``n``."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(4.0, 2.8))
    for name, values in series.items():
        ax.plot(range(len(values)), values, marker="o", ms=3, lw=1, label=name)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("dimension")
    if title:
        ax.set_title(title)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
