"""Figures written next to the tabular reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STYLES = {"simple": ("o", "-"), "ngram": ("s", "--")}


def plot_grid(reports, path, title="Word accuracy vs. training-corpus fraction"):
    """Accuracy curves, one line per (backend, test set), log-scaled x axis."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, rep in reports.items():
        for backend in sorted({b for _, b in rep.grid}):
            pts = sorted((f, acc) for (f, b), acc in rep.grid.items() if b == backend)
            marker, ls = _STYLES.get(backend, ("^", ":"))
            ax.plot([f for f, _ in pts], [100 * a for _, a in pts],
                    marker=marker, linestyle=ls, label=f"{backend} / {name}")
    fractions = sorted({f for rep in reports.values() for f, _ in rep.grid})
    ax.set_xscale("log")
    ax.set_xticks(fractions)
    ax.set_xticklabels([f"{f}%" for f in fractions])
    ax.minorticks_off()
    ax.set_xlabel("training corpus fraction")
    ax.set_ylabel("accuracy (%)")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_breakdown(report, path, title="Error classes"):
    labels = list(report.breakdown)
    values = [report.breakdown[k] for k in labels]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(labels, values, color="0.45")
    ax.set_ylabel("words")
    ax.set_title(f"{title} ({report.correct}/{report.total_words} correct)")
    ax.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
