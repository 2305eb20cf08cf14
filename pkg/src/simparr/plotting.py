"""Matplotlib figures written next to the JSON reports."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .render import VIEW, Picture, dot_radius  # noqa: E402

_METADATA = {".png": {"Software": None}, ".svg": {"Date": None}, ".pdf": {"CreationDate": None}}


def _save(fig, path) -> Path:
    path = Path(path)
    plt.rcParams["svg.hashsalt"] = "simparr"
    fig.savefig(path, metadata=_METADATA.get(path.suffix.lower()))
    plt.close(fig)
    return path


def plot_picture(pic: Picture, path, title: Optional[str] = None) -> Path:
    """The affine picture of an arrangement, lines in black and vertices sized by order."""
    fig, ax = plt.subplots(figsize=(5, 5))
    for _, (x0, y0), (x1, y1) in pic.segments:
        ax.plot([x0, x1], [y0, y1], color="black", lw=0.8)
    for _, order, (x, y) in pic.dots:
        ax.add_patch(plt.Circle((x, y), dot_radius(order), color="crimson", zorder=3))
    ax.set_xlim(-VIEW, VIEW)
    ax.set_ylim(-VIEW, VIEW)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    if title:
        ax.set_title(title)
    return _save(fig, path)


def plot_suite(report: dict, path) -> Path:
    """Bar chart of cases checked against failures for a verification report."""
    failures = report.get("failures", [])
    fig, ax = plt.subplots(figsize=(5, 3))
    cases = report.get("cases", 0)
    ax.bar(["passed", "failed"], [cases - len(failures), len(failures)],
           color=["seagreen", "firebrick"])
    ax.set_ylabel("cases")
    ax.set_title(report.get("suite", ""))
    fig.tight_layout()
    return _save(fig, path)


def plot_histogram(report: dict, path, title: Optional[str] = None) -> Path:
    """Vertex-order histogram from an analysis report."""
    hist = {int(k): v for k, v in report["v_histogram"].items()}
    orders = sorted(hist)
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar([str(k) for k in orders], [hist[k] for k in orders], color="steelblue")
    ax.set_xlabel("vertex order")
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _save(fig, path)
