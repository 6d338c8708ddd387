"""Figure rendering for traced cycles.

Renders the glued unit square with traced polylines and seam markers.
Backend is forced to Agg so figures write headlessly; output format comes
from the file suffix (.png, .svg, .pdf).
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .verification import TracedCurve

_TYPE_COLORS = {"aa": "tab:green", "bb": "tab:blue", "aba": "tab:red", "bab": "tab:orange"}


def _draw_square(ax):
    ax.plot([0, 1, 1, 0, 0], [0, 0, 1, 1, 0], color="0.3", lw=1.0, zorder=1)
    ax.set_xlim(-0.04, 1.04)
    ax.set_ylim(-0.04, 1.04)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")


def _draw_trace(ax, trace: TracedCurve, color: str, label: str = ""):
    first = True
    for seg in trace.segments:
        if len(seg) < 2:
            continue
        xs = [p.x for p in seg]
        ys = [p.y for p in seg]
        ax.plot(xs, ys, color=color, lw=1.4, zorder=3, label=label if first else None)
        first = False
    for crossing in trace.crossings:
        x, y = (float(v) for v in crossing.point.square_coords())
        ax.plot([x], [y], marker="o", ms=4, color=color, zorder=4)
        px, py = (float(v) for v in crossing.point.partner().square_coords())
        ax.plot([px], [py], marker="o", mfc="white", ms=4, color=color, zorder=4)


def plot_traces(
    traces: Sequence[Tuple[str, TracedCurve]],
    path: Union[str, Path],
    title: str = "",
) -> Path:
    """Overlay several traced cycles (labelled by type) on one square."""
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    _draw_square(ax)
    seen = set()
    for cycle_type, trace in traces:
        label = cycle_type if cycle_type not in seen else ""
        seen.add(cycle_type)
        _draw_trace(ax, trace, _TYPE_COLORS.get(cycle_type, "black"), label)
    if title:
        ax.set_title(title)
    if seen:
        ax.legend(loc="upper right", fontsize=8)
    path = Path(path)
    fig.savefig(path, dpi=160, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_single_trace(trace: TracedCurve, path: Union[str, Path], title: str = "") -> Path:
    """One trace on the unit square; suffix picks the format (e.g. .svg)."""
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    _draw_square(ax)
    _draw_trace(ax, trace, "tab:blue")
    word = trace.word or "(no crossings)"
    ax.set_title(title or f"word {word!r}, closed={trace.closed}")
    path = Path(path)
    fig.savefig(path, dpi=160, bbox_inches="tight")
    plt.close(fig)
    return path


def trace_to_csv(trace: TracedCurve, path: Union[str, Path]) -> Path:
    """Write the polyline as CSV with columns segment_index,x,y."""
    path = Path(path)
    lines = ["segment_index,x,y"]
    for i, seg in enumerate(trace.segments):
        for p in seg:
            lines.append(f"{i},{p.x!r},{p.y!r}")
    path.write_text("\n".join(lines) + "\n")
    return path
