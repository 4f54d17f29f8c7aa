"""Deterministic JSON/CSV/SVG renderings.  Every number is an exact "p/q" string."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .exact import fmt
from .geometry import ConcavePL, Interval, Polytope, QuadraticCapBody, convex_hull


def num(x):
    if isinstance(x, Interval):
        return {"lo": fmt(x.lo), "hi": fmt(x.hi)}
    return fmt(x)


def vec(v) -> list[str]:
    return [fmt(c) for c in v]


def polytope_json(P: Polytope) -> dict:
    return {"dim": P.dim, "vertices": [vec(v) for v in sorted(P.vertices)]}


def function_json(f: ConcavePL) -> dict:
    return {
        "domain": polytope_json(f.domain),
        "facets": [
            {"gradient": vec(fc.gradient), "constant": fmt(fc.constant), "cell": [vec(v) for v in sorted(fc.cell)]}
            for fc in f.facets
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([num(c) if isinstance(c, (Fraction, int)) and not isinstance(c, bool) else c for c in r])
    return buf.getvalue()


# --------------------------------------------------------------------------
# SVG (presentation only)

_SIZE = 320
_PAD = 20


def _mapper(points):
    xs = [float(p[0]) for p in points]
    ys = [float(p[1]) if len(p) > 1 else 0.0 for p in points]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    scale = (_SIZE - 2 * _PAD) / span

    def to(p):
        x = _PAD + (float(p[0]) - lo_x) * scale
        y = _SIZE - _PAD - ((float(p[1]) if len(p) > 1 else 0.0) - lo_y) * scale
        return f"{x:.2f},{y:.2f}"

    return to


def _doc(body: str) -> str:
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
            f'viewBox="0 0 {_SIZE} {_SIZE}">\n{body}</svg>\n')


def _ring(P: Polytope):
    if P.dim == 2 and P.affine_dim == 2:
        return list(P.vertices)
    return sorted(P.vertices)


def polytope_svg(P: Polytope, marks=()) -> str:
    pts = list(P.vertices) + list(marks)
    to = _mapper(pts)
    ring = " ".join(to(v) for v in _ring(P))
    out = f'<polygon points="{ring}" fill="#dde8f5" stroke="#234" stroke-width="1.5"/>\n'
    for m in marks:
        x, y = to(m).split(",")
        out += f'<circle cx="{x}" cy="{y}" r="2.5" fill="#234"/>\n'
    return _doc(out)


def function_svg(f: ConcavePL) -> str:
    """Cells shaded by the value at their centroid."""
    to = _mapper(f.domain.vertices)
    vals = [float(fc(v)) for fc in f.facets for v in fc.cell] or [0.0]
    top = max(vals) or 1.0
    out = ""
    for fc in f.facets:
        cell = convex_hull(fc.cell, f.domain.dim) if f.domain.dim == 2 else None
        if cell is None or cell.affine_dim < 2:
            continue
        c = cell.centroid_of_vertices()
        shade = int(235 - 150 * float(fc(c)) / top)
        ring = " ".join(to(v) for v in cell.vertices)
        out += f'<polygon points="{ring}" fill="rgb({shade},{shade},255)" stroke="#234" stroke-width="1"/>\n'
    return _doc(out)


def cap_svg(body: QuadraticCapBody, probes=(), center=None) -> str:
    """The cap drawn as a sampled grid of dots, plus probe points."""
    n = 120
    xs = [i / n * 3 - 0.5 for i in range(n + 1)]
    inside = [(x, y) for x in xs for y in xs if _contains_f(body, x, y)]
    marks = list(probes) + ([center] if center is not None else [])
    to = _mapper(inside + [(float(m[0]), float(m[1])) for m in marks])
    out = ""
    for x, y in inside:
        a, b = to((x, y)).split(",")
        out += f'<rect x="{a}" y="{b}" width="2" height="2" fill="#dde8f5"/>\n'
    for m in probes:
        a, b = to(m).split(",")
        out += f'<circle cx="{a}" cy="{b}" r="2.5" fill="#b22"/>\n'
    if center is not None:
        a, b = to(center).split(",")
        out += f'<circle cx="{a}" cy="{b}" r="3.5" fill="#234"/>\n'
    return _doc(out)


def _contains_f(body: QuadraticCapBody, x: float, y: float) -> bool:
    if any(float(n[0]) * x + float(n[1]) * y > float(b) + 1e-12 for n, b in body.linear):
        return False
    (a, c), (_, d) = body.Q
    q = float(a) * x * x + 2 * float(c) * x * y + float(d) * y * y + float(body.L[0]) * x + float(body.L[1]) * y + float(body.c)
    return q >= -1e-12
