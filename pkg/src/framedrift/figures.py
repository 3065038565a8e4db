"""Render decomposition reports as horizontal bar charts.

One figure per target: bars are per-frame contributions to the change
score, green when the frame's relative frequency rose between the two
periods and red when it fell. Files are written next to the delimited
reports; nothing is displayed interactively.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Patch

from .reports import DecompositionReport

RISING_COLOR = "#2e8b57"
FALLING_COLOR = "#c0392b"
FLAT_COLOR = "#8a8a8a"

DEFAULT_TOP_FRAMES = 15


def render_decomposition(report: DecompositionReport, path, top_frames: int = DEFAULT_TOP_FRAMES):
    """Save a bar chart of the largest per-frame contributions to ``path``."""
    rows = report.rows[:top_frames]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    height = max(2.2, 0.42 * len(rows) + 1.4)
    fig, ax = plt.subplots(figsize=(8.0, height))
    positions = range(len(rows))
    colors = [
        RISING_COLOR if r.delta > 0 else FALLING_COLOR if r.delta < 0 else FLAT_COLOR
        for r in rows
    ]
    ax.barh(positions, [r.contribution for r in rows], color=colors)
    ax.set_yticks(list(positions))
    ax.set_yticklabels([r.frame for r in rows], fontsize=9)
    ax.invert_yaxis()
    ax.set_xlabel("contribution to divergence (bits)")
    ax.set_title(
        f"{report.target}: {report.period_c1} vs {report.period_c2}, "
        f"total JSD {report.total:.6f}",
        fontsize=11,
    )
    ax.legend(
        handles=[
            Patch(color=RISING_COLOR, label="relative frequency rose"),
            Patch(color=FALLING_COLOR, label="relative frequency fell"),
        ],
        fontsize=8,
        loc="lower right",
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
