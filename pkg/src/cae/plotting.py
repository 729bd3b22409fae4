"""Arc diagrams on the unit disc, written as deterministic SVG."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, Polygon  # noqa: E402

from . import surface as sf  # noqa: E402
from .arcs import Arc  # noqa: E402
from .partitions import Partition  # noqa: E402
from .surface import Acc, MarkedPoint  # noqa: E402

_RC = {"svg.hashsalt": "cae", "svg.fonttype": "none", "path.simplify": False}
_PALETTE = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c"]


def squash(k: int) -> float:
    """Monotone map of Z into (0, 1) placing offsets inside their segment."""
    return 0.5 + k / (2 * (abs(k) + 3))


def _acc_angle(i: int, n: int) -> float:
    return math.pi / 2 + 2 * math.pi * (i % n) / n


def angle(p: MarkedPoint, n: int) -> float:
    a = _acc_angle(p.i, n)
    if isinstance(p, Acc):
        return a
    return a + (2 * math.pi / n) * squash(p.k)


def position(p: MarkedPoint, n: int) -> tuple[float, float]:
    t = angle(p, n)
    return math.cos(t), math.sin(t)


@dataclass
class RenderSpec:
    n: int
    arcs: Sequence[Arc] = ()
    labels: Sequence[Optional[str]] = ()
    partition: Optional[Partition] = None
    size: float = 4.0
    title: Optional[str] = None
    extra_points: Sequence[MarkedPoint] = field(default_factory=tuple)


def _site_boundary(num: int, n: int, steps: int = 24) -> list[tuple[float, float]]:
    site = sf.site_from_number(num, n)
    a = _acc_angle(site.i, n)
    if site.kind == "acc":
        return [(math.cos(a), math.sin(a))]
    span = 2 * math.pi / n
    lo, hi = a + 0.04 * span, a + 0.96 * span
    return [
        (math.cos(lo + (hi - lo) * t / steps), math.sin(lo + (hi - lo) * t / steps))
        for t in range(steps + 1)
    ]


def draw(ax, spec: RenderSpec) -> None:
    n = spec.n
    ax.add_patch(Circle((0, 0), 1.0, fill=False, lw=1.0, color="black"))
    if spec.partition is not None:
        for idx, block in enumerate(sorted(spec.partition.blocks, key=min)):
            pts = [xy for num in sorted(block) for xy in _site_boundary(num, n)]
            color = _PALETTE[idx % len(_PALETTE)]
            if len(pts) >= 3:
                ax.add_patch(Polygon(pts, closed=True, fc=color, ec=color, alpha=0.25, lw=0.8))
            else:
                ax.plot(*zip(*pts), "o", ms=9, color=color, alpha=0.35)
    labels = list(spec.labels) + [None] * (len(spec.arcs) - len(spec.labels))
    reg_points = set(spec.extra_points)
    for a, label in zip(spec.arcs, labels):
        (x0, y0), (x1, y1) = position(a.p, n), position(a.q, n)
        ax.plot([x0, x1], [y0, y1], lw=1.4, color="#222222")
        reg_points.update(p for p in a.endpoints if not isinstance(p, Acc))
        if label:
            ax.annotate(label, ((x0 + x1) / 2, (y0 + y1) / 2), fontsize=8, ha="center", va="bottom")
    for p in sorted(reg_points, key=sf.point_key):
        x, y = position(p, n)
        ax.plot([x], [y], "o", ms=3, color="black")
    for i in range(n):
        x, y = position(Acc(i), n)
        ax.add_patch(Circle((x, y), 0.045, fc="white", ec="black", lw=1.0, zorder=5))
        ax.annotate(f"a{i}", (1.15 * x, 1.15 * y), fontsize=8, ha="center", va="center")
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_aspect("equal")
    ax.axis("off")
    if spec.title:
        ax.set_title(spec.title, fontsize=9)


def render_svg(spec: RenderSpec) -> str:
    """SVG text for ``spec``; identical input gives byte-identical output."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(spec.size, spec.size))
        try:
            draw(ax, spec)
            buf = io.StringIO()
            fig.savefig(buf, format="svg", metadata={"Date": None}, bbox_inches="tight")
        finally:
            plt.close(fig)
    return buf.getvalue()


def write_svg(spec: RenderSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(spec))


def bar_chart_svg(path, title: str, names: Sequence[str], passed: Sequence[int], failed: Sequence[int]) -> None:
    """Stacked pass/fail counts, used by the verification report."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(max(3.0, 0.9 * len(names) + 1.5), 3.0))
        try:
            xs = range(len(names))
            ax.bar(xs, passed, color="#55a868", label="agree")
            ax.bar(xs, failed, bottom=passed, color="#c44e52", label="disagree")
            ax.set_xticks(list(xs), list(names), fontsize=8)
            ax.set_ylabel("checks")
            ax.set_title(title, fontsize=9)
            ax.legend(fontsize=7, frameon=False)
            fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
        finally:
            plt.close(fig)
