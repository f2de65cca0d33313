"""Minimal deterministic SVG emission: line charts and heatmaps.

Hand-rolled so output bytes depend only on the data (no timestamps,
random ids, or library version strings).
"""

SERIES_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                 "#9467bd", "#8c564b", "#7f7f7f")

_W, _H = 720, 440
_ML, _MR, _MT, _MB = 64, 160, 40, 48


def _fmt(v):
    return f"{v:.3f}".rstrip("0").rstrip(".")


def _ticks(lo, hi, count=5):
    if hi == lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def line_chart(x_values, series, title="", x_label="", y_label=""):
    """Render named series over shared x values as an SVG document string."""
    xs = list(map(float, x_values))
    all_y = [float(v) for vals in series.values() for v in vals]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(all_y), max(all_y)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def px(v):
        return _ML + (v - x_lo) / (x_hi - x_lo) * plot_w if x_hi > x_lo else _ML

    def py(v):
        return _MT + (y_hi - v) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    parts.append(f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
                 'fill="none" stroke="#333" stroke-width="1"/>')
    for tv in _ticks(x_lo, x_hi):
        parts.append(f'<line x1="{_fmt(px(tv))}" y1="{_MT + plot_h}" '
                     f'x2="{_fmt(px(tv))}" y2="{_MT + plot_h + 5}" stroke="#333"/>')
        parts.append(f'<text x="{_fmt(px(tv))}" y="{_MT + plot_h + 18}" '
                     'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="11">{_fmt(tv)}</text>')
    for tv in _ticks(y_lo, y_hi):
        parts.append(f'<line x1="{_ML - 5}" y1="{_fmt(py(tv))}" x2="{_ML}" '
                     f'y2="{_fmt(py(tv))}" stroke="#333"/>')
        parts.append(f'<text x="{_ML - 8}" y="{_fmt(py(tv) + 4)}" '
                     'text-anchor="end" font-family="sans-serif" '
                     f'font-size="11">{_fmt(tv)}</text>')
    parts.append(f'<text x="{_ML + plot_w / 2:.0f}" y="{_H - 10}" '
                 'text-anchor="middle" font-family="sans-serif" '
                 f'font-size="12">{x_label}</text>')
    if y_label:
        parts.append(f'<text x="16" y="{_MT + plot_h / 2:.0f}" '
                     'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="12" transform="rotate(-90 16 '
                     f'{_MT + plot_h / 2:.0f})">{y_label}</text>')
    for idx, (name, values) in enumerate(series.items()):
        color = SERIES_COLORS[idx % len(SERIES_COLORS)]
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(float(v)))}"
                       for x, v in zip(xs, values))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.8"/>')
        ly = _MT + 14 + 18 * idx
        parts.append(f'<line x1="{_ML + plot_w + 12}" y1="{ly}" '
                     f'x2="{_ML + plot_w + 34}" y2="{ly}" stroke="{color}" '
                     'stroke-width="2.5"/>')
        parts.append(f'<text x="{_ML + plot_w + 40}" y="{ly + 4}" '
                     f'font-family="sans-serif" font-size="11">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _diverging_color(v):
    # blue (-1) -> white (0) -> red (+1)
    v = max(-1.0, min(1.0, v))
    if v >= 0:
        g = int(round(255 * (1 - v)))
        return f"rgb(255,{g},{g})"
    g = int(round(255 * (1 + v)))
    return f"rgb({g},{g},255)"


def heatmap(matrix, labels, title=""):
    """Render a square matrix as a red/blue SVG heatmap (positive = red)."""
    c = len(matrix)
    vmax = max(abs(float(v)) for row in matrix for v in row) or 1.0
    cell = max(12, min(40, 480 // max(c, 1)))
    label_w = 10 + 7 * max((len(str(l)) for l in labels), default=0)
    width = label_w + c * cell + 20
    height = 40 + c * cell + label_w
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]
    for i in range(c):
        for j in range(c):
            color = _diverging_color(float(matrix[i][j]) / vmax)
            parts.append(f'<rect x="{label_w + j * cell}" y="{36 + i * cell}" '
                         f'width="{cell}" height="{cell}" fill="{color}" '
                         'stroke="#ddd" stroke-width="0.5"/>')
    for i, lab in enumerate(labels):
        y = 36 + i * cell + cell // 2 + 4
        parts.append(f'<text x="{label_w - 6}" y="{y}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="10">{lab}</text>')
        x = label_w + i * cell + cell // 2
        ty = 36 + c * cell + 8
        parts.append(f'<text x="{x}" y="{ty}" text-anchor="start" '
                     f'font-family="sans-serif" font-size="10" '
                     f'transform="rotate(60 {x} {ty})">{lab}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
