"""SVG rendering of polycons, sides, adjoints and marked points.

Curve tracing runs marching squares over a rational grid with exact interval
sign evaluation per cell: a cell is only skipped when the interval certifies
the polynomial has no zero there, and cells whose corners agree in sign but
whose interval still straddles zero are subdivided, so small ovals are not
missed.  The emitted coordinates are floats; rendering is presentation only
and never feeds a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .plane import Curve, ProjPoint
from .poly import AFF, Poly
from .polycon import Polycon, SideSelection

ALL_LAYERS = (
    "boundary",
    "sides",
    "adjoint",
    "residual-points",
    "vertices",
    "reduced-line",
    "reduced-adjoint",
)


@dataclass(frozen=True)
class RenderSpec:
    viewport: tuple[Fraction, Fraction, Fraction, Fraction]  # x0, y0, x1, y1
    resolution: tuple[int, int] = (64, 64)
    layers: tuple[str, ...] = ("boundary", "adjoint", "residual-points", "vertices")

    def __post_init__(self):
        x0, y0, x1, y1 = self.viewport
        if x1 <= x0 or y1 <= y0:
            raise ValueError("viewport must have positive area")
        if self.resolution[0] < 16 or self.resolution[1] < 16:
            raise ValueError("resolution must be at least 16x16")
        for l in self.layers:
            if l not in ALL_LAYERS:
                raise ValueError(f"unknown layer {l!r}")


Interval = tuple[Fraction, Fraction]


def _iv_add(a: Interval, b: Interval) -> Interval:
    return (a[0] + b[0], a[1] + b[1])


def _iv_mul(a: Interval, b: Interval) -> Interval:
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(c), max(c))


def interval_eval2(p: Poly, xr: Interval, yr: Interval) -> Interval:
    """Exact interval evaluation of an affine polynomial over a box."""
    # Horner in x with interval coefficients in y
    by_x: dict[int, list] = {}
    dmax = 0
    for (i, j), c in p.terms.items():
        by_x.setdefault(i, []).append((j, c))
        dmax = max(dmax, i)
    acc: Interval = (Fraction(0), Fraction(0))
    for i in range(dmax, -1, -1):
        acc = _iv_mul(acc, xr)
        coef: Interval = (Fraction(0), Fraction(0))
        for j, c in by_x.get(i, ()):  # evaluate c*y^j over yr
            t: Interval = (c, c)
            for _ in range(j):
                t = _iv_mul(t, yr)
            coef = _iv_add(coef, t)
        acc = _iv_add(acc, coef)
    return acc


def _march_cell(p: Poly, x0, y0, x1, y1, depth: int, segs: list) -> None:
    iv = interval_eval2(p, (x0, x1), (y0, y1))
    if iv[0] > 0 or iv[1] < 0:
        return  # certified sign; nothing to draw
    corners = [
        p.evaluate((x0, y0)),
        p.evaluate((x1, y0)),
        p.evaluate((x1, y1)),
        p.evaluate((x0, y1)),
    ]
    has_pos = any(v > 0 for v in corners)
    has_neg = any(v < 0 for v in corners)
    if not (has_pos and has_neg):
        # the interval straddles zero but the corners do not: a small oval or
        # tangency may hide inside; subdivide
        if depth > 0:
            xm, ym = (x0 + x1) / 2, (y0 + y1) / 2
            for (a, b, c, d) in (
                (x0, y0, xm, ym),
                (xm, y0, x1, ym),
                (x0, ym, xm, y1),
                (xm, ym, x1, y1),
            ):
                _march_cell(p, a, b, c, d, depth - 1, segs)
        return
    pts = []
    edges = [
        ((x0, y0), (x1, y0), corners[0], corners[1]),
        ((x1, y0), (x1, y1), corners[1], corners[2]),
        ((x1, y1), (x0, y1), corners[2], corners[3]),
        ((x0, y1), (x0, y0), corners[3], corners[0]),
    ]
    for (ax, ay), (bx, by), va, vb in edges:
        if va == 0 and vb == 0:
            continue
        if (va > 0 > vb) or (va < 0 < vb) or va == 0:
            t = 0.0 if vb == va else float(va) / float(va - vb)
            pts.append((float(ax) + t * (float(bx) - float(ax)),
                        float(ay) + t * (float(by) - float(ay))))
    if len(pts) >= 2:
        segs.append((pts[0], pts[1]))
    if len(pts) == 4:
        segs.append((pts[2], pts[3]))


def trace_curve(p: Poly, spec: RenderSpec, subdivide: int = 3) -> list:
    """Line segments approximating the zero set inside the viewport."""
    aff = p.dehomogenize() if p.vars != AFF else p
    x0, y0, x1, y1 = spec.viewport
    nx, ny = spec.resolution
    dx = (x1 - x0) / nx
    dy = (y1 - y0) / ny
    segs: list = []
    for i in range(nx):
        for j in range(ny):
            _march_cell(
                aff,
                x0 + i * dx,
                y0 + j * dy,
                x0 + (i + 1) * dx,
                y0 + (j + 1) * dy,
                subdivide,
                segs,
            )
    return segs


def side_polylines(sides: SideSelection, samples: int = 96) -> list:
    """Float polylines along each side arc (presentation only)."""
    import math

    out = []
    for side in sides.sides:
        arc = side.arc

        def angle(param):
            s, t = float(param[0]), float(param[1])
            return math.atan2(s, t) % math.pi

        ta, tb = angle(arc.a), angle(arc.b)
        tw = angle(arc.witness)
        lo, hi = min(ta, tb), max(ta, tb)
        inside = lo < tw < hi
        pts = []
        for k in range(1, samples):
            if inside:
                th = lo + (hi - lo) * k / samples
            else:
                th = (hi + (math.pi - (hi - lo)) * k / samples) % math.pi
            param = (Fraction(round(math.sin(th) * 10**6), 10**6),
                     Fraction(round(math.cos(th) * 10**6), 10**6))
            try:
                pt = side.param.backward(param)
            except Exception:
                continue
            if pt.is_affine():
                x, y = pt.affine_xy()
                pts.append((float(x), float(y)))
        out.append({"component": side.component, "points": pts})
    return out


def render_svg(
    polycon: Polycon,
    spec: RenderSpec,
    adjoint_poly: Optional[Poly] = None,
    sides: Optional[SideSelection] = None,
    residual_points: Sequence[ProjPoint] = (),
    reduced_line: Optional[Poly] = None,
    reduced_adjoint: Optional[Poly] = None,
) -> str:
    x0, y0, x1, y1 = (float(v) for v in spec.viewport)
    w, h = 640, 640
    sx = w / (x1 - x0)
    sy = h / (y1 - y0)

    def tx(p):
        return (p[0] - x0) * sx, h - (p[1] - y0) * sy

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]

    def emit_segments(segs, color, width=1.4, dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        for (a, b) in segs:
            (ax, ay), (bx, by) = tx(a), tx(b)
            parts.append(
                f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                f'stroke="{color}" stroke-width="{width}"{d}/>'
            )

    if "boundary" in spec.layers:
        for c in polycon.components:
            emit_segments(trace_curve(c.poly, spec), "#e08214", 1.2)
    if "sides" in spec.layers and sides is not None:
        for line in side_polylines(sides):
            pts = line["points"]
            for a, b in zip(pts, pts[1:]):
                emit_segments([(a, b)], "#b35806", 2.6)
    if "adjoint" in spec.layers and adjoint_poly is not None:
        emit_segments(trace_curve(adjoint_poly, spec), "#542788", 1.6)
    if "reduced-line" in spec.layers and reduced_line is not None:
        emit_segments(trace_curve(reduced_line, spec), "#999999", 1.0, dash="6,4")
    if "reduced-adjoint" in spec.layers and reduced_adjoint is not None:
        emit_segments(trace_curve(reduced_adjoint, spec), "#1b7837", 1.4)
    if "residual-points" in spec.layers:
        for pt in residual_points:
            if pt.is_rational() and pt.is_affine():
                x, y = (float(v) for v in pt.affine_xy())
                cx, cy = tx((x, y))
                parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="#542788"/>')
    if "vertices" in spec.layers:
        for v in polycon.vertices:
            if v.is_rational() and v.is_affine():
                x, y = (float(c) for c in v.affine_xy())
                cx, cy = tx((x, y))
                parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="#e08214" '
                             f'stroke="black"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def default_viewport(polycon: Polycon, margin: Fraction = Fraction(2)) -> tuple:
    xs, ys = [], []
    for v in polycon.vertices:
        if v.is_affine() and v.is_rational():
            x, y = v.affine_xy()
            xs.append(x)
            ys.append(y)
    if not xs:
        return (Fraction(-10), Fraction(-10), Fraction(10), Fraction(10))
    return (min(xs) - margin - 3, min(ys) - margin - 3, max(xs) + margin + 3, max(ys) + margin + 3)
