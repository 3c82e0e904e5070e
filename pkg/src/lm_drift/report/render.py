"""
SVG renderers, one per chart kind. Each takes validated chart data and a
``StyleOptions`` and returns the document as a string; the same inputs give
the same bytes.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional

from .charts import ChartKind, validate
from .palette import OTHER_COLOR, bucket_color, diverging_color, lighten, root_colors, sequential_color
from .sunburst import OTHER_LABEL
from .svg import SVG, annular_sector, polar

AXIS_COLOR = "#333333"
GRID_COLOR = "#dddddd"
SERIES_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#7f7f7f")

# sunburst arc labels are drawn only on arcs wider than this (degrees)
MIN_LABEL_SWEEP = 12.0


@dataclass(frozen=True)
class StyleOptions:
    width: int = 720
    height: int = 480
    font_family: str = "sans-serif"
    font_size: float = 11.0
    colors: Mapping[str, str] = field(default_factory=dict)  # component root -> hex
    margin: int = 60

    def color_for(self, root: str) -> str:
        if root in self.colors:
            return self.colors[root]
        # roots outside the run palette still get a stable colour
        return root_colors([root])[root]


def _canvas(style: StyleOptions, title: str) -> SVG:
    svg = SVG(style.width, style.height, style.font_family, style.font_size)
    svg.rect(0, 0, style.width, style.height, "#ffffff")
    svg.text(style.width / 2, 22, title, anchor="middle", font_weight="bold")
    return svg


def _nice_max(value: float) -> float:
    """Smallest 1, 2, 2.5 or 5 times a power of ten that is >= value."""
    if value <= 0:
        return 1.0
    magnitude = 10 ** math.floor(math.log10(value))
    return next(step * magnitude for step in (1, 2, 2.5, 5, 10) if step * magnitude >= value)


def plot_timeseries(data: Mapping[str, Any], style: StyleOptions) -> str:
    """LM-related proportion (left axis) and mean N_L, observed and null estimate (right axis)."""
    svg = _canvas(style, "LM terms per conference")
    points = data["points"]
    m = style.margin
    x0, x1, y0, y1 = m, style.width - m, style.height - m, m
    svg.line(x0, y0, x1, y0, AXIS_COLOR)
    svg.line(x0, y0, x0, y1, AXIS_COLOR)
    svg.line(x1, y0, x1, y1, AXIS_COLOR)
    if not points:
        svg.text(style.width / 2, style.height / 2, "no data", anchor="middle")
        return svg.get_svg()

    step = (x1 - x0) / max(len(points) - 1, 1)
    xs = [x0 + i * step if len(points) > 1 else (x0 + x1) / 2 for i in range(len(points))]
    means = [p["mean_n_l"] for p in points] + [p["estimated_mean_n_l"] for p in points if p["estimated_mean_n_l"] is not None]
    mean_max = _nice_max(max(means))

    def y_prop(v: float) -> float:
        return y0 - (y0 - y1) * v

    def y_mean(v: float) -> float:
        return y0 - (y0 - y1) * v / mean_max

    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = y_prop(frac)
        svg.line(x0, y, x1, y, GRID_COLOR)
        svg.text(x0 - 6, y + 4, f"{frac:.2f}", anchor="end")
        svg.text(x1 + 6, y + 4, f"{frac * mean_max:.1f}", anchor="start")
    for x, p in zip(xs, points):
        svg.text(x, y0 + 18, p["label"], anchor="middle")

    series = [
        ("prop LM-related", [(x, y_prop(p["prop_lm_related"])) for x, p in zip(xs, points)]),
        ("mean N_L", [(x, y_mean(p["mean_n_l"])) for x, p in zip(xs, points)]),
        ("estimated mean N_L", [(x, y_mean(p["estimated_mean_n_l"])) for x, p in zip(xs, points)
                                if p["estimated_mean_n_l"] is not None]),
    ]
    for i, (name, pts) in enumerate(series):
        color = SERIES_COLORS[i]
        svg.group_start(cls="series", title=name)
        dash = "4 3" if name.startswith("estimated") else None
        svg.polyline(pts, color, stroke_width=2, stroke_dasharray=dash)
        for x, y in pts:
            svg.circle(x, y, 3, color)
        svg.group_end()
        svg.rect(x0 + 10 + i * 170, y1 - 24, 12, 12, color)
        svg.text(x0 + 26 + i * 170, y1 - 14, name)
    return svg.get_svg()


def _grid_labels(svg: SVG, labels: List[str], x0: float, y0: float, cell: float) -> None:
    for i, label in enumerate(labels):
        svg.text(x0 - 6, y0 + (i + 0.5) * cell + 4, label, anchor="end")
        svg.text(x0 + (i + 0.5) * cell, y0 - 8, label, anchor="middle")


def plot_pairwise(data: Mapping[str, Any], style: StyleOptions) -> str:
    """K-S heatmap: upper triangle coloured by significance and sign, annotated with the mean difference."""
    svg = _canvas(style, f"Pairwise K-S test ({data['scope']})")
    labels = list(data["labels"])
    n = max(len(labels), 1)
    x0, y0 = style.margin * 1.6, style.margin
    cell = min((style.width - x0 - style.margin) / n, (style.height - y0 - style.margin) / n)
    index = {label: i for i, label in enumerate(labels)}
    _grid_labels(svg, labels, x0, y0, cell)
    for c in data["cells"]:
        r, k = index.get(c["row"]), index.get(c["column"])
        if r is None or k is None:
            continue
        x, y = x0 + k * cell, y0 + r * cell
        svg.rect(x, y, cell, cell, bucket_color(c["significance_bucket"], c["mean_diff"]), cls="cell",
                 stroke=GRID_COLOR,
                 title=f"{c['row']} vs {c['column']}: D={c['ks_statistic']:.3f} p={c['p_value']:.3g}")
        svg.text(x + cell / 2, y + cell / 2 + 4, f"{c['mean_diff']:.2f}", anchor="middle")
    return svg.get_svg()


def _draw_ring(svg: SVG, nodes: List[Mapping[str, Any]], parent_value: int, start: float, sweep: float,
               depth: int, cx: float, cy: float, ring: float, style: StyleOptions) -> None:
    angle = start
    for node in nodes:
        node_sweep = sweep * node["value"] / parent_value if parent_value else 0.0
        if node_sweep <= 0:
            continue
        base = style.color_for(node["color_key"])
        fill = OTHER_COLOR if node["label"] == OTHER_LABEL else lighten(base, 0.22 * depth)
        r_inner, r_outer = ring * (depth + 0.6), ring * (depth + 1.6)
        svg.path(annular_sector(cx, cy, r_inner, r_outer, angle, node_sweep), fill, cls="arc",
                 stroke="#ffffff", title=f"{node['entry_id']}: {node['value']} ({node['own']} own)")
        if node_sweep >= MIN_LABEL_SWEEP:
            lx, ly = polar(cx, cy, (r_inner + r_outer) / 2, angle + node_sweep / 2)
            svg.text(lx, ly + 4, node["label"], anchor="middle")
        if node["children"]:
            # children share their parent's arc in proportion to their value
            _draw_ring(svg, node["children"], node["value"], angle, node_sweep, depth + 1, cx, cy, ring, style)
        angle += node_sweep


def _depth(nodes: List[Mapping[str, Any]]) -> int:
    return 1 + max((_depth(n["children"]) for n in nodes if n["children"]), default=0) if nodes else 0


def plot_sunburst(data: Mapping[str, Any], style: StyleOptions) -> str:
    """Rings by dependency depth; the first root starts at 12 o'clock and roots run counter-clockwise."""
    svg = _canvas(style, f"Model composition ({data['scope']})")
    roots = data["roots"]
    cx, cy = style.width / 2, style.height / 2 + 12
    levels = max(_depth(roots), 1)
    ring = (min(style.width, style.height) / 2 - style.margin / 2) / (levels + 0.6)
    total = data["total"] or sum(r["value"] for r in roots)
    _draw_ring(svg, roots, total, 90.0, 360.0, 0, cx, cy, ring, style)
    svg.text(cx, cy + 4, f"N={total}", anchor="middle")
    return svg.get_svg()


def plot_jaccard(data: Mapping[str, Any], style: StyleOptions) -> str:
    svg = _canvas(style, f"Jaccard similarity ({data['scope']})")
    labels = list(data["labels"])
    n = max(len(labels), 1)
    x0, y0 = style.margin * 1.6, style.margin
    cell = min((style.width - x0 - style.margin) / n, (style.height - y0 - style.margin) / n)
    _grid_labels(svg, labels, x0, y0, cell)
    for r, row in enumerate(data["values"]):
        for k, value in enumerate(row):
            x, y = x0 + k * cell, y0 + r * cell
            svg.rect(x, y, cell, cell, sequential_color(value), cls="cell", stroke="#ffffff",
                     title=f"{labels[r]} / {labels[k]}: {value:.3f}")
            svg.text(x + cell / 2, y + cell / 2 + 4, f"{value:.2f}", anchor="middle",
                     fill="#ffffff" if value > 0.6 else AXIS_COLOR)
    return svg.get_svg()


def plot_majority(data: Mapping[str, Any], style: StyleOptions) -> str:
    """One stacked bar per conference: share of papers dominated by each component, then no majority."""
    svg = _canvas(style, f"Absolute majority by component ({data['scope']})")
    bars = data["bars"]
    x0, x1 = style.margin * 1.6, style.width - style.margin * 2.2
    y0 = style.margin
    bar_h = min(36.0, (style.height - 2 * style.margin) / max(len(bars), 1) - 8)
    legend: Dict[str, str] = {}
    for i, bar in enumerate(bars):
        y = y0 + i * (bar_h + 8)
        svg.text(x0 - 6, y + bar_h / 2 + 4, f"{bar['label']} (n={bar['counted_papers']})", anchor="end")
        x = x0
        for root, share in sorted(bar["by_component"].items(), key=lambda kv: (-kv[1], kv[0])):
            if share <= 0:
                continue
            color = style.color_for(root)
            legend.setdefault(root, color)
            svg.rect(x, y, (x1 - x0) * share, bar_h, color, cls="segment", title=f"{root}: {share:.1%}")
            x += (x1 - x0) * share
        if bar["no_majority_fraction"] > 0:
            svg.rect(x, y, (x1 - x0) * bar["no_majority_fraction"], bar_h, OTHER_COLOR, cls="segment",
                     title=f"no majority: {bar['no_majority_fraction']:.1%}")
            legend.setdefault("no majority", OTHER_COLOR)
    for i, (name, color) in enumerate(sorted(legend.items())):
        ly = y0 + i * 16
        svg.rect(x1 + 12, ly, 10, 10, color)
        svg.text(x1 + 26, ly + 9, name)
    return svg.get_svg()


def plot_diverging(data: Mapping[str, Any], style: StyleOptions) -> str:
    """Horizontal bars around zero, one per component; share differences shown in percentage points."""
    svg = _canvas(style, data["title"])
    deltas = data["deltas"]
    x0, x1 = style.margin * 1.6, style.width - style.margin
    mid = (x0 + x1) / 2
    limit = max((abs(d["delta"]) for d in deltas), default=0.0) or 1.0
    bar_h = min(24.0, (style.height - 2 * style.margin) / max(len(deltas), 1) - 4)
    svg.line(mid, style.margin - 4, mid, style.height - style.margin, AXIS_COLOR)
    for i, d in enumerate(deltas):
        y = style.margin + i * (bar_h + 4)
        width = (x1 - mid) * abs(d["delta"]) / limit
        x = mid if d["delta"] >= 0 else mid - width
        svg.rect(x, y, width, bar_h, diverging_color(d["delta"], limit), cls="bar", title=f"{d['root']}: {d['delta']:+.4f}")
        svg.text(x0 - 6, y + bar_h / 2 + 4, d["root"], anchor="end")
        label_x = mid + width + 4 if d["delta"] >= 0 else mid - width - 4
        svg.text(label_x, y + bar_h / 2 + 4, f"{d['delta'] * 100:+.1f}", anchor="start" if d["delta"] >= 0 else "end")
    return svg.get_svg()


RENDERERS: Dict[ChartKind, Callable[[Mapping[str, Any], StyleOptions], str]] = {
    ChartKind.TIMESERIES: plot_timeseries,
    ChartKind.PAIRWISE: plot_pairwise,
    ChartKind.SUNBURST: plot_sunburst,
    ChartKind.JACCARD: plot_jaccard,
    ChartKind.MAJORITY: plot_majority,
    ChartKind.DIVERGING: plot_diverging,
}


def render(kind: ChartKind, data: Mapping[str, Any], style: Optional[StyleOptions] = None) -> str:
    """
    Validate ``data`` against the kind's schema and draw it.

    Raises:
        SchemaError: data is missing a field or has a wrong type
    """
    kind = ChartKind(kind)
    validate(kind, data)
    return RENDERERS[kind](data, style or StyleOptions())
