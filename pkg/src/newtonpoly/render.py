"""ASCII and SVG renderings of the polygon JSON schema.

Both renderers are pure functions of the JSON dict, so identical polygons
produce byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["ascii_polygon", "svg_polygon"]


def ascii_polygon(polygon: dict) -> str:
    """Character plot: '*' vertices, 'o' interior lattice points of edges,
    '.' the boundary path, origin row/column axes."""
    vertices = [tuple(v) for v in polygon["vertices"]]
    xs = [x for x, _ in vertices]
    ys = [y for _, y in vertices]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys + [0]), max(ys + [0])
    width = x_max - x_min + 1
    height = y_max - y_min + 1
    header = f"NP_{polygon['prime']}: " + " -> ".join(f"({x},{y})" for x, y in vertices)
    slopes = ", ".join(
        f"{e['slope']['num']}/{e['slope']['den']} (len {e['length']})" for e in polygon["edges"]
    )
    if width > 120 or height > 60:
        return "\n".join([header, f"slopes: {slopes}", "(polygon too wide for a character plot)"])
    grid = [[" "] * width for _ in range(height)]

    def put(x: int, y: int, ch: str) -> None:
        grid[y_max - y][x - x_min] = ch

    if y_min <= 0 <= y_max:
        for x in range(x_min, x_max + 1):
            put(x, 0, "-")
    if x_min <= 0 <= x_max:
        for y in range(y_min, y_max + 1):
            put(0, y, "|")
    if x_min <= 0 <= x_max and y_min <= 0 <= y_max:
        put(0, 0, "+")

    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        span = x1 - x0
        for x in range(x0, x1 + 1):
            y = Fraction(y0) + Fraction(y1 - y0, span) * (x - x0)
            if y.denominator == 1:
                put(x, int(y), ".")
    for x, y in vertices:
        put(x, y, "*")

    lines = ["".join(row).rstrip() for row in grid]
    return "\n".join([header, f"slopes: {slopes}" if slopes else "slopes: none", *lines])


_SVG_SCALE = 40
_SVG_PAD = 30


def svg_polygon(polygon: dict) -> str:
    """Standalone SVG: axes, the lower polygon path, labeled vertices."""
    vertices = [tuple(v) for v in polygon["vertices"]]
    xs = [x for x, _ in vertices]
    ys = [y for _, y in vertices]
    x_min, x_max = min(xs + [0]), max(xs)
    y_min, y_max = min(ys + [0]), max(ys + [0])

    def sx(x: float) -> float:
        return _SVG_PAD + (x - x_min) * _SVG_SCALE

    def sy(y: float) -> float:
        return _SVG_PAD + (y_max - y) * _SVG_SCALE

    width = sx(x_max) + _SVG_PAD
    height = sy(y_min) + _SVG_PAD
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<line x1="{sx(x_min):.1f}" y1="{sy(0):.1f}" x2="{sx(x_max):.1f}" y2="{sy(0):.1f}" '
        'stroke="#999" stroke-width="1"/>',
        f'<line x1="{sx(0):.1f}" y1="{sy(y_min):.1f}" x2="{sx(0):.1f}" y2="{sy(y_max):.1f}" '
        'stroke="#999" stroke-width="1"/>',
    ]
    path = " ".join(
        (f"M {sx(x):.1f} {sy(y):.1f}" if i == 0 else f"L {sx(x):.1f} {sy(y):.1f}")
        for i, (x, y) in enumerate(vertices)
    )
    parts.append(f'<path d="{path}" fill="none" stroke="#1f77b4" stroke-width="2"/>')
    for x, y in vertices:
        parts.append(f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="3.5" fill="#d62728"/>')
        parts.append(
            f'<text x="{sx(x) + 6:.1f}" y="{sy(y) - 6:.1f}" font-size="11" '
            f'font-family="monospace">({x},{y})</text>'
        )
    parts.append(
        f'<text x="{_SVG_PAD:.1f}" y="{height - 8:.1f}" font-size="12" font-family="monospace">'
        f"NP_{polygon['prime']}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts)
