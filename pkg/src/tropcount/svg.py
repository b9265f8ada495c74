"""SVG 1.1 drawings of plane tropical curves.

Vertices are dots, bounded edges segments, and ends rays clipped to the
bounding box. Every element carries ``data-*`` attributes with its edge
name and slope so drawings can be checked structurally.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .curves import TropicalCurve
from .errors import InvariantError
from .trees import end

BBox = tuple[Fraction, Fraction, Fraction, Fraction]


def default_bbox(curve: TropicalCurve, pad: int = 3, projection=None) -> BBox:
    pts = [_project(p, projection) for p in curve.positions.values()]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _project(v: Sequence, projection) -> tuple:
    if projection is None:
        return tuple(v)
    return tuple(sum(a * b for a, b in zip(row, v)) for row in projection)


def clip_ray(origin, direction, bbox: BBox):
    """Point where the ray leaves the box, or ``None`` if it starts outside."""
    x0, y0, x1, y1 = bbox
    px, py = origin
    if not (x0 <= px <= x1 and y0 <= py <= y1):
        return None
    dx, dy = direction
    ts = []
    if dx > 0:
        ts.append((x1 - px) / Fraction(dx))
    elif dx < 0:
        ts.append((x0 - px) / Fraction(dx))
    if dy > 0:
        ts.append((y1 - py) / Fraction(dy))
    elif dy < 0:
        ts.append((y0 - py) / Fraction(dy))
    if not ts:
        return None
    t = min(ts)
    return (px + t * dx, py + t * dy)


def clip_segment(a, b, bbox: BBox):
    """Liang-Barsky clipping; ``None`` when the segment misses the box."""
    x0, y0, x1, y1 = bbox
    dx, dy = b[0] - a[0], b[1] - a[1]
    lo, hi = Fraction(0), Fraction(1)
    for p, q in ((-dx, a[0] - x0), (dx, x1 - a[0]), (-dy, a[1] - y0), (dy, y1 - a[1])):
        if p == 0:
            if q < 0:
                return None
            continue
        t = Fraction(q) / p
        if p < 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    if lo > hi:
        return None
    return (a[0] + lo * dx, a[1] + lo * dy), (a[0] + hi * dx, a[1] + hi * dy)


def render_svg(curve: TropicalCurve, bbox: BBox | None = None, width: int = 480, projection=None) -> str:
    if projection is None and curve.rank != 2:
        raise InvariantError("SVG output needs rank 2 or an explicit 2-row projection")
    if projection is not None and len(projection) != 2:
        raise InvariantError("projection must have exactly 2 rows")
    bbox = tuple(Fraction(x) for x in (bbox or default_bbox(curve, projection=projection)))
    x0, y0, x1, y1 = bbox
    if x1 <= x0 or y1 <= y0:
        raise InvariantError("bounding box must have positive width and height")
    scale = Fraction(width) / (x1 - x0)
    height = int((y1 - y0) * scale)

    def px(p):
        return f"{float((p[0] - x0) * scale):.2f}", f"{float((y1 - p[1]) * scale):.2f}"

    tree = curve.tree
    rs = tree.rooted
    pos = {w: _project(p, projection) for w, p in curve.positions.items()}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white" stroke="#888"/>',
    ]
    for edge in tree.bounded_edges:
        a, b = pos[rs.tail[edge]], pos[rs.head[edge]]
        slope = ",".join(map(str, curve.slopes[edge]))
        seg = clip_segment(a, b, bbox)
        if seg is None:
            continue
        (ax, ay), (bx, by) = px(seg[0]), px(seg[1])
        out.append(
            f'<line class="edge" data-edge="g{edge[1]}" data-tail="{rs.tail[edge]}" data-head="{rs.head[edge]}" '
            f'data-slope="{slope}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="black" stroke-width="2"/>'
        )
    for i in range(1, tree.r + 1):
        e = end(i)
        w = tree.end_vertex[i - 1]
        slope = curve.slopes[e]
        direction = _project(slope, projection)
        origin = pos[w]
        tag = f'data-edge="e{i}" data-vertex="{w}" data-slope="{",".join(map(str, slope))}"'
        if not any(direction):
            cx, cy = px(origin)
            out.append(f'<circle class="contracted" {tag} cx="{cx}" cy="{cy}" r="7" fill="none" stroke="#c00"/>')
            continue
        tip = clip_ray(origin, direction, bbox)
        if tip is None:
            continue
        (ax, ay), (bx, by) = px(origin), px(tip)
        out.append(
            f'<line class="end" {tag} x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#1f4fbf" stroke-width="2"/>'
        )
        out.append(f'<text x="{bx}" y="{by}" font-size="12" fill="#1f4fbf">e{i}</text>')
    for w in range(tree.n_finite):
        cx, cy = px(pos[w])
        coords = ",".join(str(x) for x in curve.positions[w])
        out.append(f'<circle class="vertex" data-vertex="{w}" data-position="{coords}" cx="{cx}" cy="{cy}" r="4" fill="black"/>')
    for i in range(1, tree.r + 1):
        if not any(_project(curve.slopes[end(i)], projection)):
            cx, cy = px(pos[tree.end_vertex[i - 1]])
            out.append(f'<text x="{cx}" y="{cy}" dx="8" dy="-8" font-size="12" fill="#c00">e{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
