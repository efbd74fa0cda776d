"""Deterministic SVG drawings of the boundary-plane shadows."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .document import ConfigDocument

EYE_FILL = "#d9d9d9"
STROKE = "#222222"
TIE = "#b03030"
STRIP = "#3060b0"


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 160.0
    draw_ties: bool = True
    draw_strip: bool = False
    labels: bool = False
    margin: float = 0.25

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(doc: ConfigDocument, opts: RenderOptions | None = None) -> str:
    """SVG 1.1 text; the model y-axis points up in the drawing."""
    opts = opts or RenderOptions()
    balls = list(doc.eyes) + list(doc.beads)
    xs0 = [b.center.x - b.radius for b in balls]
    xs1 = [b.center.x + b.radius for b in balls]
    ys0 = [b.center.y - b.radius for b in balls]
    ys1 = [b.center.y + b.radius for b in balls]
    xmin, xmax = min(xs0) - opts.margin, max(xs1) + opts.margin
    ymin, ymax = min(ys0) - opts.margin, max(ys1) + opts.margin
    s = opts.scale
    width, height = (xmax - xmin) * s, (ymax - ymin) * s

    def X(x):
        return _f((x - xmin) * s)

    def Y(y):
        return _f((ymax - y) * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" '
        f'height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
    ]
    label = doc.metadata.get("label")
    if label:
        out.append(f"  <title>{escape(str(label))}</title>")
    out.append('  <rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>')

    if opts.draw_strip:
        e1, e2 = doc.eyes[0].z, doc.eyes[1].z
        axis = e2 - e1
        u = axis / abs(axis) if abs(axis) else 1.0
        n = 1j * u
        reach = (xmax - xmin) + (ymax - ymin)
        out.append(f'  <g stroke="{STRIP}" stroke-width="1" stroke-dasharray="6 4" fill="none">')
        for p, d in ((e1, u), (e1, n), (e2, n)):
            a, b = p - reach * d, p + reach * d
            out.append(f'    <line x1="{X(a.real)}" y1="{Y(a.imag)}" x2="{X(b.real)}" y2="{Y(b.imag)}"/>')
        out.append("  </g>")

    out.append(f'  <g stroke="{STROKE}" stroke-width="1.5" fill="{EYE_FILL}">')
    for e in doc.eyes:
        out.append(f'    <circle cx="{X(e.center.x)}" cy="{Y(e.center.y)}" r="{_f(e.radius * s)}"/>')
    out.append("  </g>")

    if doc.beads:
        out.append(f'  <g stroke="{STROKE}" stroke-width="1.5" fill="none">')
        for b in doc.beads:
            out.append(f'    <circle cx="{X(b.center.x)}" cy="{Y(b.center.y)}" r="{_f(b.radius * s)}"/>')
        out.append("  </g>")

    if opts.draw_ties and len(doc.beads) > 1:
        k = len(doc.beads)
        out.append(f'  <g stroke="{TIE}" stroke-width="1">')
        for i in range(k):
            a, b = doc.beads[i].center, doc.beads[(i + 1) % k].center
            out.append(f'    <line x1="{X(a.x)}" y1="{Y(a.y)}" x2="{X(b.x)}" y2="{Y(b.y)}"/>')
        out.append("  </g>")

    if opts.labels:
        out.append('  <g font-family="sans-serif" font-size="14" text-anchor="middle" fill="#000000">')
        for i, e in enumerate(doc.eyes, start=1):
            out.append(f'    <text x="{X(e.center.x)}" y="{Y(e.center.y)}">C{i}</text>')
        for i, b in enumerate(doc.beads):
            out.append(f'    <text x="{X(b.center.x)}" y="{Y(b.center.y)}">{i}</text>')
        out.append("  </g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"
