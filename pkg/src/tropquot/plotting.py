"""SVG figures of fans and skeleton graphs (matplotlib, Agg backend).

SVG output is made byte-stable: text stays text, the id salt is fixed and
the date metadata is dropped.
"""

from __future__ import annotations

import io
import math
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .errors import UnsupportedConeError  # noqa: E402
from .polyhedra import Fan  # noqa: E402
from .tropicalize import SkeletonGraph, skeleton_graph, trop  # noqa: E402

SVG_RC = {"svg.fonttype": "none", "svg.hashsalt": "tropquot", "path.simplify": False}
RAY_LENGTH = 1.0


def _angle(v):
    return math.atan2(v[1], v[0])


def _unit(v):
    norm = math.hypot(*v)
    return tuple(x / norm for x in v)


def fan_figure(fan: Fan) -> Figure:
    """Rays from the origin with maximal cones shaded.  Rank 1 or 2 only."""
    n = fan.ambient_rank
    if n > 2:
        raise UnsupportedConeError(f"unsupported rank {n}: fan plots need rank <= 2")
    fig = Figure(figsize=(4, 4) if n == 2 else (4, 1.5))
    ax = fig.add_subplot()
    ax.set_aspect("equal")
    ax.axis("off")
    ax.plot([0], [0], "o", color="black", ms=4, gid="origin")
    for c in fan.maximal_cones:
        if n == 2 and c.dim == 2:
            a, b = sorted((_unit(r) for r in c.rays), key=_angle)
            if _angle(b) - _angle(a) > math.pi:
                a, b = b, a
            ax.add_patch(Polygon([(0, 0), a, b], closed=True, alpha=0.25, color="tab:blue", lw=0))
    for i, r in enumerate(fan.rays):
        d = _unit(r) if n == 2 else (float(r[0]), 0.0)
        ax.plot([0, RAY_LENGTH * d[0]], [0, RAY_LENGTH * d[1]], color="black", lw=1.5, gid=f"ray{i}")
        ax.text(1.15 * d[0], 1.15 * d[1], str(i), ha="center", va="center", fontsize=9)
    ax.set_xlim(-1.4, 1.4)
    if n == 2:
        ax.set_ylim(-1.4, 1.4)
    else:
        ax.set_ylim(-0.4, 0.4)
    ax.set_title(fan.name, fontsize=10)
    return fig


def skeleton_figure(graph: SkeletonGraph) -> Figure:
    """Rank-1 skeletons are drawn as the segment 0, η, ∞; others as a layered graph."""
    if graph.fan.ambient_rank == 1:
        return _segment_figure(graph)
    fig = Figure(figsize=(5, 4))
    ax = fig.add_subplot()
    ax.axis("off")
    dims = graph.dims()
    layers: dict[int, list[int]] = {}
    for i, d in enumerate(dims):
        layers.setdefault(d, []).append(i)
    pos = {}
    for d, members in layers.items():
        for k, i in enumerate(members):
            pos[i] = ((k + 1) / (len(members) + 1), d)
    for i, j in graph.edges:
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.plot([x0, x1], [y0, y1], color="gray", lw=1)
    for i, c in enumerate(graph.vertices):
        x, y = pos[i]
        ax.plot([x], [y], "o", color="black", ms=6)
        label = "{" + ",".join(str(k) for k in graph.fan.ray_indices(c)) + "}"
        ax.text(x, y - 0.18, label, ha="center", va="top", fontsize=8)
    if "η" in graph.marked:
        top = layers[max(layers)][0]
        ax.text(pos[top][0] + 0.04, pos[top][1], "η", ha="left", va="center", fontsize=11)
    ax.set_ylim(-0.6, max(layers) + 0.4)
    ax.set_xlim(0, 1)
    ax.set_title(f"{graph.fan.name}: strata by dimension", fontsize=10)
    return fig


def _segment_figure(graph: SkeletonGraph) -> Figure:
    fig = Figure(figsize=(2, 4))
    ax = fig.add_subplot()
    ax.axis("off")
    ends = graph.segment()
    ys = [-2.0, 0.0, 2.0]
    ax.plot([0, 0], [ys[0], ys[2]], color="black", lw=1.2)
    for node, y in zip(ends, ys):
        face = "black" if node["closed"] else "white"
        ax.plot([0], [y], "o", ms=7, markerfacecolor=face, markeredgecolor="black", zorder=3)
        if node["label"] == "η":
            ax.text(0.25, y, node["label"], ha="left", va="center", fontsize=12)
        else:
            ax.text(0, y + (-0.45 if y < 0 else 0.45), node["label"], ha="center", va="center", fontsize=12)
    ax.set_xlim(-1, 1)
    ax.set_ylim(-2.8, 2.8)
    ax.set_title(graph.fan.name, fontsize=10)
    return fig


def figure_svg(fig: Figure) -> str:
    with matplotlib.rc_context(SVG_RC):
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def render_svg(target: Union[Fan, SkeletonGraph]) -> str:
    if isinstance(target, SkeletonGraph):
        return figure_svg(skeleton_figure(target))
    return figure_svg(fan_figure(target))


def write_svg(target: Union[Fan, SkeletonGraph], path: Union[str, Path]) -> Path:
    p = Path(path)
    p.write_text(render_svg(target), encoding="utf-8")
    return p


def trop_scatter_figure(report, fan: Fan) -> Figure:
    """Tropicalizations of torus-orbit sample points, marker size by fiber size."""
    fig = Figure(figsize=(4, 4))
    ax = fig.add_subplot()
    counts: dict = {}
    for x in report.points:
        if not x.orbit.rays:
            u = trop(x)
            counts[u.rep] = counts.get(u.rep, 0) + 1
    pts = sorted(counts)
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) if fan.ambient_rank > 1 else 0.0 for p in pts]
    ax.scatter(xs, ys, s=[12 * counts[p] for p in pts], color="tab:blue", alpha=0.7)
    ax.set_xlabel("trop coordinate 1")
    ax.set_ylabel("trop coordinate 2" if fan.ambient_rank > 1 else "")
    ax.set_title(f"{report.fan}: torus-stratum fibers ({report.verdict})", fontsize=10)
    return fig


__all__ = ["fan_figure", "figure_svg", "render_svg", "skeleton_figure", "skeleton_graph", "write_svg"]
