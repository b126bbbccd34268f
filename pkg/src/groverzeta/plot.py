"""Self-contained SVG scatter plots of zeta poles in the complex plane."""

from __future__ import annotations

import json
import math
from html import escape

from .spectra import PoleSet

PANEL = 420
MARGIN = 40


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _extent(ps: PoleSet) -> float:
    ext = 0.0
    for p in ps.poles:
        ext = max(ext, abs(p.value.real), abs(p.value.imag))
    if ps.circle is not None:
        ext = max(ext, abs(ps.circle.center) + ps.circle.radius)
    ext = max(ext, 0.5) * 1.15
    # round up to a half-unit so tick marks land on tidy values
    return math.ceil(ext * 4) / 4


def _panel(ps: PoleSet, title: str, ox: float) -> list[str]:
    ext = _extent(ps)
    inner = PANEL - 2 * MARGIN
    scale = inner / (2 * ext)
    cx0, cy0 = ox + PANEL / 2, PANEL / 2 + 20

    def px(re: float) -> float:
        return cx0 + re * scale

    def py(im: float) -> float:
        return cy0 - im * scale

    out = [f'<g class="panel" data-kind="{ps.kind}">']
    out.append(
        f'<rect x="{_fmt(ox + MARGIN)}" y="{_fmt(cy0 - inner / 2)}" width="{_fmt(inner)}" '
        f'height="{_fmt(inner)}" fill="none" stroke="#bbb"/>'
    )
    out.append(f'<line class="axis" x1="{_fmt(px(-ext))}" y1="{_fmt(cy0)}" x2="{_fmt(px(ext))}" y2="{_fmt(cy0)}" stroke="#444"/>')
    out.append(f'<line class="axis" x1="{_fmt(cx0)}" y1="{_fmt(py(-ext))}" x2="{_fmt(cx0)}" y2="{_fmt(py(ext))}" stroke="#444"/>')
    step = 0.5 if ext <= 2 else 1.0
    t = -math.floor(ext / step) * step
    while t <= ext + 1e-12:
        if abs(t) > 1e-12:
            out.append(f'<text class="tick" x="{_fmt(px(t))}" y="{_fmt(cy0 + 14)}" font-size="10" text-anchor="middle">{_fmt(t)}</text>')
            out.append(f'<text class="tick" x="{_fmt(cx0 - 4)}" y="{_fmt(py(t) + 3)}" font-size="10" text-anchor="end">{_fmt(t)}i</text>')
        t += step
    if ps.circle is not None:
        c = ps.circle
        out.append(
            f'<circle class="reference-circle" cx="{_fmt(px(c.center))}" cy="{_fmt(cy0)}" '
            f'r="{_fmt(c.radius * scale)}" data-center="{c.center!r}" data-radius="{c.radius!r}" '
            'fill="none" stroke="#1f77b4" stroke-dasharray="4 3"/>'
        )
    for p in ps.poles:
        z = p.value
        label = ps.label(p)
        cls = "pole trivial" if p.trivial else "pole"
        style = 'fill="white" stroke="#d62728" stroke-width="2"' if p.trivial else 'fill="#111"'
        out.append(
            f'<circle class="{cls}" cx="{_fmt(px(z.real))}" cy="{_fmt(py(z.imag))}" r="4" '
            f'data-re="{z.real!r}" data-im="{z.imag!r}" data-multiplicity="{p.multiplicity}" '
            f'data-annotation="{label}" {style}/>'
        )
        if p.multiplicity > 1:
            out.append(
                f'<text class="multiplicity" x="{_fmt(px(z.real) + 6)}" y="{_fmt(py(z.imag) - 6)}" '
                f'font-size="9">×{p.multiplicity}</text>'
            )
    out.append(f'<text x="{_fmt(ox + PANEL / 2)}" y="16" font-size="13" text-anchor="middle">{escape(title)}</text>')
    out.append("</g>")
    return out


def render_svg(panels: list[tuple[str, PoleSet]]) -> str:
    """One panel per ``(title, PoleSet)``, laid out left to right.

    A leading comment carries the circle parameters as JSON.
    """
    meta = {
        "panels": [
            {
                "title": title,
                "kind": ps.kind,
                "k": ps.regular_degree,
                "circle": None if ps.circle is None else {"center": ps.circle.center, "radius": ps.circle.radius},
                "poles": len(ps.poles),
            }
            for title, ps in panels
        ]
    }
    width = PANEL * len(panels)
    height = PANEL + 30
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<!-- groverzeta-metadata {json.dumps(meta, sort_keys=True)} -->",
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i, (title, ps) in enumerate(panels):
        lines.extend(_panel(ps, title, i * PANEL))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
