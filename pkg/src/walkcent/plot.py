"""Plot data for difference curves: CSV rows and a static SVG line chart."""
from __future__ import annotations

import csv
import io
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT, PAD = 720, 360, 50


def curve_csv(x, raw, rescaled) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["parameter", "difference", "rescaled_difference"])
    for a, b, c in zip(x, raw, rescaled):
        w.writerow([repr(float(a)), repr(float(b)), repr(float(c))])
    return buf.getvalue()


def read_curve_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    return np.array([[float(v) for v in r] for r in rows[1:]])


def curve_svg(x, y, crossings=(), tangencies=(), title: str = "", xlabel: str = "", ylabel: str = "") -> str:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = np.isfinite(y)
    x0, x1 = float(x.min()), float(x.max())
    ylo, yhi = (float(y[ok].min()), float(y[ok].max())) if ok.any() else (-1.0, 1.0)
    ylo, yhi = min(ylo, 0.0), max(yhi, 0.0)
    if yhi == ylo:
        yhi = ylo + 1.0

    def px(v):
        return PAD + (v - x0) / (x1 - x0) * (WIDTH - 2 * PAD)

    def py(v):
        return HEIGHT - PAD - (v - ylo) / (yhi - ylo) * (HEIGHT - 2 * PAD)

    pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x[ok], y[ok]))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{PAD}" y1="{py(0):.2f}" x2="{WIDTH - PAD}" y2="{py(0):.2f}" stroke="#888" stroke-dasharray="4 3"/>',
        f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
        f'<line x1="{PAD}" y1="{HEIGHT - PAD}" x2="{WIDTH - PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
        f'<polyline fill="none" stroke="#1f5fa8" stroke-width="1.5" points="{pts}"/>',
    ]
    for c in crossings:
        parts.append(f'<circle class="crossing" cx="{px(c):.2f}" cy="{py(0):.2f}" r="4" fill="#c0392b"/>')
    for t in tangencies:
        parts.append(f'<circle class="tangency" cx="{px(t):.2f}" cy="{py(0):.2f}" r="4" fill="none" stroke="#c0392b"/>')
    labels = [
        (PAD, HEIGHT - PAD + 18, "start", f"{x0:.4g}"),
        (WIDTH - PAD, HEIGHT - PAD + 18, "end", f"{x1:.4g}"),
        (PAD - 6, py(yhi) + 4, "end", f"{yhi:.3g}"),
        (PAD - 6, py(ylo) + 4, "end", f"{ylo:.3g}"),
        (WIDTH / 2, HEIGHT - 12, "middle", xlabel),
        (WIDTH / 2, 24, "middle", title),
        (14, HEIGHT / 2, "middle", ylabel),
    ]
    for lx, ly, anchor, text in labels:
        if text:
            parts.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="12" font-family="sans-serif" '
                         f'text-anchor="{anchor}">{escape(text)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
