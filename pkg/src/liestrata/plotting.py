"""Figures for gradings, graded centralizers and claim reports.

Everything renders off-screen with the Agg backend; every function writes a
file and returns its path.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}

STATUS_COLORS = {"pass": "#3a7d44", "fail": "#c0392b", "error": "#7f8c8d"}


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_grading(dims: Mapping[int, int], path: str | Path, title: str = "") -> Path:
    """Bar chart of bucket dimension against degree."""
    degrees = sorted(dims)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.25 * len(degrees) + 2), 2.8))
        ax.bar(degrees, [dims[d] for d in degrees], width=0.8, color="#4c72b0")
        ax.set_xlabel("degree")
        ax.set_ylabel("dimension")
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_graded_centralizer(
    dims: Mapping[int, int],
    kernel: Mapping[int, int],
    path: str | Path,
    title: str = "",
) -> Path:
    """Bucket dimensions with the centralizer part of each bucket overlaid."""
    degrees = sorted(dims)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.25 * len(degrees) + 2), 2.8))
        ax.bar(degrees, [dims[d] for d in degrees], width=0.8, color="#d0d7e5", label="bucket")
        ax.bar(degrees, [kernel.get(d, 0) for d in degrees], width=0.5, color="#c44e52", label="centralizer")
        ax.set_xlabel("degree")
        ax.set_ylabel("dimension")
        ax.legend(frameon=False)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_claim_summary(reports: Sequence, path: str | Path, title: str = "claims") -> Path:
    """Stacked pass/fail/error counts per claim kind."""
    kinds = sorted({r.kind for r in reports})
    counts = Counter((r.kind, r.status) for r in reports)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6.0, max(2.0, 0.3 * len(kinds) + 1)))
        left = [0] * len(kinds)
        for status, color in STATUS_COLORS.items():
            widths = [counts[(k, status)] for k in kinds]
            ax.barh(kinds, widths, left=left, color=color, label=status)
            left = [a + b for a, b in zip(left, widths)]
        ax.set_xlabel("claims")
        ax.legend(frameon=False, loc="lower right")
        ax.set_title(title)
        return _save(fig, path)
