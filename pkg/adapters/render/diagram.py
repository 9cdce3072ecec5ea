"""
Persistence diagram rendering with matplotlib's SVG backend.

Layout: x = birth, y = death; bars that never die sit on a dashed row at
y = T + 1; the diagonal runs from (0, 0) to (T + 1, T + 1). Marks are
drawn in (birth, death) order and repeated bars are annotated with their
multiplicity, so equal barcodes produce identical files.
"""

import logging
from collections import Counter
from pathlib import Path
from typing import List, Optional, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from domain.barcodes import Barcode  # noqa: E402

logger = logging.getLogger(__name__)

# Fixed SVG ids so reruns are byte-identical.
matplotlib.rcParams["svg.hashsalt"] = "persistence-qm"


def diagram_points(barcode: Barcode) -> List[Tuple[int, int, int]]:
    """(x, y, multiplicity) per distinct bar, infinite deaths at T + 1."""
    infinity_row = barcode.T + 1
    counts = Counter(barcode.intervals)
    return [
        (bar.b, infinity_row if bar.is_infinite else int(bar.d), n)
        for bar, n in sorted(counts.items())
    ]


def render_diagram(
    barcode: Barcode,
    output: Union[str, Path],
    title: Optional[str] = None,
) -> Path:
    """Write the persistence diagram of barcode to output as SVG."""
    output = Path(output)
    top = barcode.T + 1
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot([0, top], [0, top], color="gray", linewidth=1)
    ax.axhline(top, color="gray", linestyle="--", linewidth=0.8)
    points = diagram_points(barcode)
    if points:
        xs, ys, _ = zip(*points)
        ax.scatter(xs, ys, color="tab:blue", zorder=3)
        for x, y, n in points:
            if n > 1:
                ax.annotate(
                    f"x{n}", (x, y), textcoords="offset points", xytext=(5, 5)
                )
    ticks = list(range(top + 1))
    ax.set_xticks(ticks)
    ax.set_yticks(ticks)
    ax.set_yticklabels([str(t) for t in ticks[:-1]] + ["inf"])
    ax.set_xlim(-0.5, top + 0.5)
    ax.set_ylim(-0.5, top + 0.5)
    ax.set_xlabel("birth")
    ax.set_ylabel("death")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info(f"diagram with {len(barcode)} bars written to {output}")
    return output
