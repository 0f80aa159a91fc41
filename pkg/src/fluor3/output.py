"""Deterministic CSV and SVG writers."""
from pathlib import Path

import numpy as np

FLOAT_FORMAT = "%.17g"


def fmt(x):
    return FLOAT_FORMAT % x


def write_csv(path, header, rows):
    """Write rows with ``\\n`` endings; floats use 17 significant digits."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, (float, np.floating)):
                cells.append(fmt(v))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def write_spectrum_csv(path, series):
    write_csv(path, ("offset", "value"), zip(series.offsets, series.values))


def read_spectrum_csv(path):
    """Inverse of :func:`write_spectrum_csv`; returns ``(offsets, values)``."""
    with open(path, encoding="utf-8", newline="") as fh:
        header = fh.readline().strip()
        if header != "offset,value":
            raise ValueError(f"unexpected header {header!r}")
        data = [line.split(",") for line in fh.read().splitlines() if line]
    arr = np.array([[float(a), float(b)] for a, b in data])
    return arr[:, 0], arr[:, 1]


def complex_rows(matrix, route):
    m = np.asarray(matrix)
    if m.ndim == 1:
        return [(route, i, float(z.real), float(z.imag)) for i, z in enumerate(m)]
    return [
        (route, i, j, float(m[i, j].real), float(m[i, j].imag))
        for i in range(m.shape[0]) for j in range(m.shape[1])
    ]


def _nice(x):
    return f"{x:.4g}"


def svg_line_chart(series_list, title="", xlabel="", ylabel="", width=720, height=440):
    """Standalone SVG 1.1 document with one polyline per ``(label, x, y)`` series."""
    left, right, top, bottom = 80, 20, 40, 60
    pw, ph = width - left - right, height - top - bottom
    xs = np.concatenate([np.asarray(s[1], float) for s in series_list])
    ys = np.concatenate([np.asarray(s[2], float) for s in series_list])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(min(ys.min(), 0.0)), float(ys.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    colours = ("#c0392b", "#2e86c1", "#27ae60", "#000000")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(5):
        xv = x0 + (x1 - x0) * k / 4
        yv = y0 + (y1 - y0) * k / 4
        out.append(f'<text x="{px(xv):.2f}" y="{top + ph + 18}" font-size="12" '
                   f'text-anchor="middle">{_nice(xv)}</text>')
        out.append(f'<text x="{left - 6}" y="{py(yv) + 4:.2f}" font-size="12" '
                   f'text-anchor="end">{_nice(yv)}</text>')
    for n, (label, x, y) in enumerate(series_list):
        pts = " ".join(f"{px(a):.3f},{py(b):.3f}" for a, b in zip(x, y))
        colour = colours[n % len(colours)]
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{pts}"/>')
        out.append(f'<text x="{left + pw - 8}" y="{top + 16 + 16 * n}" font-size="12" '
                   f'text-anchor="end" fill="{colour}">{_escape(label)}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 16}" font-size="14" '
               f'text-anchor="middle">{_escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{top + ph / 2:.2f}" font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 18 {top + ph / 2:.2f})">{_escape(ylabel)}</text>')
    out.append(f'<text x="{width / 2:.2f}" y="24" font-size="15" '
               f'text-anchor="middle">{_escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text):
    return (str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))
