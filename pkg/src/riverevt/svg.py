"""Minimal SVG scatter/line charts for the plot CSVs."""

from __future__ import annotations

from html import escape

import numpy as np

W, H, PAD = 480, 360, 50


def _scale(v, lo, hi, a, b):
    if hi == lo:
        return np.full_like(v, (a + b) / 2, dtype=float)
    return a + (v - lo) * (b - a) / (hi - lo)


def chart(series: list[dict], xlabel: str, ylabel: str, title: str = "") -> str:
    """
    Render ``series`` as one SVG document.

    Each item has ``x``, ``y`` arrays, a ``style`` of ``"points"`` or
    ``"line"`` and an optional ``color``. Non-finite values are dropped.
    """
    cleaned = []
    for s in series:
        x, y = np.asarray(s["x"], float), np.asarray(s["y"], float)
        ok = np.isfinite(x) & np.isfinite(y)
        cleaned.append((x[ok], y[ok], s.get("style", "points"), s.get("color", "#1f77b4")))
    xs = np.concatenate([c[0] for c in cleaned]) if cleaned else np.array([0.0])
    ys = np.concatenate([c[1] for c in cleaned]) if cleaned else np.array([0.0])
    if xs.size == 0:
        xs = ys = np.array([0.0])
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
           f'<rect width="{W}" height="{H}" fill="white"/>',
           f'<line x1="{PAD}" y1="{H - PAD}" x2="{W - PAD}" y2="{H - PAD}" stroke="black"/>',
           f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{H - PAD}" stroke="black"/>',
           f'<text x="{W / 2}" y="{H - 12}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>',
           f'<text x="14" y="{H / 2}" text-anchor="middle" font-size="12" '
           f'transform="rotate(-90 14 {H / 2})">{escape(ylabel)}</text>',
           f'<text x="{W / 2}" y="20" text-anchor="middle" font-size="13">{escape(title)}</text>',
           f'<text x="{PAD}" y="{H - PAD + 14}" font-size="10">{x0:.4g}</text>',
           f'<text x="{W - PAD}" y="{H - PAD + 14}" font-size="10" text-anchor="end">{x1:.4g}</text>',
           f'<text x="{PAD - 4}" y="{H - PAD}" font-size="10" text-anchor="end">{y0:.4g}</text>',
           f'<text x="{PAD - 4}" y="{PAD + 4}" font-size="10" text-anchor="end">{y1:.4g}</text>']
    for x, y, style, color in cleaned:
        px = _scale(x, x0, x1, PAD, W - PAD)
        py = _scale(y, y0, y1, H - PAD, PAD)
        if style == "line":
            pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        else:
            out += [f'<circle cx="{a:.2f}" cy="{b:.2f}" r="2" fill="{color}"/>' for a, b in zip(px, py)]
    out.append("</svg>")
    return "\n".join(out) + "\n"
