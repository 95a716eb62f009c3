"""Renders corpus statistics as chart images next to the delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import CorpusStats, _stats_rows


def render_corpus_figures(stats: CorpusStats, outdir: str | Path) -> list[Path]:
    """Write one horizontal bar chart per stats column; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = _stats_rows(stats)
    patterns = [r[0] for r in rows]
    charts = [
        ("pattern_projects.png", "Projects affected", [r[1] for r in rows]),
        ("pattern_instances.png", "Pattern instances", [r[2] for r in rows]),
        ("pattern_avg_wmc.png", "Average WMC of affected projects", [float(r[3]) for r in rows]),
    ]
    written = []
    for filename, title, values in charts:
        path = outdir / filename
        _bar_chart(patterns, values, title, path)
        written.append(path)
    return written


def _bar_chart(patterns: list[str], values: list, title: str, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(8, 0.28 * len(patterns) + 1.2))
    positions = range(len(patterns))
    ax.barh(positions, values, color="#4878a8")
    ax.set_yticks(list(positions))
    ax.set_yticklabels(patterns, fontsize=8)
    ax.invert_yaxis()  # first detector on top, matching table order
    ax.set_title(title)
    ax.tick_params(axis="x", labelsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
