"""
Minimal SVG 1.1 builder. Output is a pure function of the calls made:
no ids, timestamps or random values, floats fixed to 4 decimals.
"""

import math
from typing import Dict, List, Optional, Tuple
from xml.sax.saxutils import escape, quoteattr


def fmt(value: float) -> str:
    text = f"{float(value):.4f}"
    return "0.0000" if text == "-0.0000" else text


def _attrs(attrs: Dict[str, object]) -> str:
    parts = []
    for key, value in attrs.items():
        if value is None:
            continue
        if isinstance(value, float):
            value = fmt(value)
        parts.append(f"{key.replace('_', '-')}={quoteattr(str(value))}")
    return " ".join(parts)


class SVG:
    def __init__(self, width: float, height: float, font_family: str = "sans-serif", font_size: float = 11.0):
        self.width = width
        self.height = height
        self.parts: List[str] = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
            f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" height="{fmt(height)}" '
            f'viewBox="0 0 {fmt(width)} {fmt(height)}" font-family={quoteattr(font_family)} font-size="{fmt(font_size)}">',
        ]

    def group_start(self, cls: Optional[str] = None, title: Optional[str] = None) -> None:
        self.parts.append(f"<g {_attrs({'class': cls})}>" if cls else "<g>")
        if title:
            self.parts.append(f"<title>{escape(title)}</title>")

    def group_end(self) -> None:
        self.parts.append("</g>")

    def rect(self, x: float, y: float, width: float, height: float, fill: str, cls: Optional[str] = None,
             title: Optional[str] = None, **extra) -> None:
        attrs = _attrs(dict({"class": cls, "x": float(x), "y": float(y), "width": float(width),
                             "height": float(height), "fill": fill}, **extra))
        if title:
            self.parts.append(f"<rect {attrs}><title>{escape(title)}</title></rect>")
        else:
            self.parts.append(f"<rect {attrs}/>")

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str = "#333333", **extra) -> None:
        self.parts.append(f"<line {_attrs(dict(x1=float(x1), y1=float(y1), x2=float(x2), y2=float(y2), stroke=stroke, **extra))}/>")

    def polyline(self, points: List[Tuple[float, float]], stroke: str, cls: Optional[str] = None, **extra) -> None:
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)
        self.parts.append(f"<polyline {_attrs(dict({'class': cls, 'points': pts, 'fill': 'none', 'stroke': stroke}, **extra))}/>")

    def circle(self, cx: float, cy: float, r: float, fill: str, **extra) -> None:
        self.parts.append(f"<circle {_attrs(dict(cx=float(cx), cy=float(cy), r=float(r), fill=fill, **extra))}/>")

    def path(self, d: str, fill: str, cls: Optional[str] = None, title: Optional[str] = None, **extra) -> None:
        attrs = _attrs(dict({"class": cls, "d": d, "fill": fill}, **extra))
        if title:
            self.parts.append(f"<path {attrs}><title>{escape(title)}</title></path>")
        else:
            self.parts.append(f"<path {attrs}/>")

    def text(self, x: float, y: float, string: str, anchor: str = "start", **extra) -> None:
        attrs = _attrs(dict(x=float(x), y=float(y), text_anchor=anchor, **extra))
        self.parts.append(f"<text {attrs}>{escape(string)}</text>")

    def get_svg(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def polar(cx: float, cy: float, r: float, degrees: float) -> Tuple[float, float]:
    # counter-clockwise on screen: y grows downward
    rad = math.radians(degrees)
    return cx + r * math.cos(rad), cy - r * math.sin(rad)


def annular_sector(cx: float, cy: float, r_inner: float, r_outer: float, start: float, sweep: float) -> str:
    """Path data for a ring segment from ``start`` degrees, ``sweep`` degrees counter-clockwise."""
    if sweep >= 359.9999:
        # a full ring: two half arcs per circle, inner drawn in reverse
        o1, o2 = polar(cx, cy, r_outer, start), polar(cx, cy, r_outer, start + 180)
        i1, i2 = polar(cx, cy, r_inner, start), polar(cx, cy, r_inner, start + 180)
        return (
            f"M{fmt(o1[0])} {fmt(o1[1])} A{fmt(r_outer)} {fmt(r_outer)} 0 1 0 {fmt(o2[0])} {fmt(o2[1])} "
            f"A{fmt(r_outer)} {fmt(r_outer)} 0 1 0 {fmt(o1[0])} {fmt(o1[1])} "
            f"M{fmt(i1[0])} {fmt(i1[1])} A{fmt(r_inner)} {fmt(r_inner)} 0 1 1 {fmt(i2[0])} {fmt(i2[1])} "
            f"A{fmt(r_inner)} {fmt(r_inner)} 0 1 1 {fmt(i1[0])} {fmt(i1[1])} Z"
        )
    end = start + sweep
    large = 1 if sweep > 180 else 0
    o1, o2 = polar(cx, cy, r_outer, start), polar(cx, cy, r_outer, end)
    i2, i1 = polar(cx, cy, r_inner, end), polar(cx, cy, r_inner, start)
    return (
        f"M{fmt(o1[0])} {fmt(o1[1])} A{fmt(r_outer)} {fmt(r_outer)} 0 {large} 0 {fmt(o2[0])} {fmt(o2[1])} "
        f"L{fmt(i2[0])} {fmt(i2[1])} A{fmt(r_inner)} {fmt(r_inner)} 0 {large} 1 {fmt(i1[0])} {fmt(i1[1])} Z"
    )
