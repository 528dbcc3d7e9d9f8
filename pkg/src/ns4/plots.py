"""Figures of normalization traces (written to files, never shown)."""

from __future__ import annotations

from pathlib import Path
from typing import Dict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .reduction import MeasureTrace  # noqa: E402


def _series(trace: MeasureTrace):
    ms = [trace.steps[0].before] + [s.after for s in trace.steps]
    return (
        [m.G for m in ms],
        [m.I.s for m in ms],
        [m.length for m in ms],
    )


def plot_trace(trace: MeasureTrace, out: Path, title: str = "") -> Path:
    """Degree, top-degree segment length sum and size along one run."""
    out = Path(out)
    fig, axes = plt.subplots(1, 3, figsize=(10, 3), constrained_layout=True)
    if trace.steps:
        g, s, n = _series(trace)
        xs = range(len(g))
        for ax, ys, label in zip(axes, (g, s, n), ("degree G", "index s", "nodes")):
            ax.step(xs, ys, where="post", marker="o", ms=3)
            ax.set_xlabel("step")
            ax.set_ylabel(label)
        for st in trace.transient_steps():
            i = trace.steps.index(st) + 1
            axes[1].axvline(i, color="tab:red", lw=0.8, ls=":")
    else:
        for ax in axes:
            ax.text(0.5, 0.5, "already normal", ha="center", va="center", transform=ax.transAxes)
    if title:
        fig.suptitle(title)
    fig.savefig(out, dpi=100)
    plt.close(fig)
    return out


def plot_overview(traces: Dict[str, MeasureTrace], out: Path) -> Path:
    """Index (d, s) read lexicographically as d + s/(s+1), one line per input."""
    out = Path(out)
    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    for name, tr in sorted(traces.items()):
        if not tr.steps:
            continue
        ms = [tr.steps[0].before] + [s.after for s in tr.steps]
        ys = [m.I.d + m.I.s / (m.I.s + 1) for m in ms]
        ax.plot(range(len(ys)), ys, marker=".", lw=1, label=name)
    ax.set_xlabel("step")
    ax.set_ylabel("index (d + s/(s+1))")
    if len(traces) <= 12:
        ax.legend(fontsize=7)
    fig.savefig(out, dpi=100)
    plt.close(fig)
    return out
