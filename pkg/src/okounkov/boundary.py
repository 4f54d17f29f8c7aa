"""Boundary behaviour of homothety-family functions.

For a body B and a boundary point p, h(x) = sup{t : x in t p + (1 - t) B}
is the Okounkov function of the filtration whose slices are those
homotheties.  h(p) = 1 always.  If B is not locally a cone at p there are
boundary points p_i -> p whose ray from p leaves B at p_i itself, so
h(p_i) = 0 and h is discontinuous at p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (Body, Interval, Point, Polytope, QuadraticCapBody, _dot, _pt,
                       homothety_sup, is_locally_cone)


@dataclass(frozen=True)
class HomothetyFunction:
    body: Body
    center: Point

    def __post_init__(self):
        object.__setattr__(self, "center", _pt(self.center))
        if not self.body.on_boundary(self.center):
            raise ValueError(f"{self.center} is not on the boundary")

    def __call__(self, x) -> Fraction | Interval:
        return homothety_sup(self.body, self.center, x)


@dataclass(frozen=True)
class BoundaryReport:
    center: Point
    locally_cone: bool
    center_value: Fraction
    probes: tuple[Point, ...]
    values: tuple[Fraction | Interval, ...]

    @property
    def kind(self) -> str:
        return "continuity" if self.locally_cone else "discontinuity"

    @property
    def distances_sq(self) -> tuple[Fraction, ...]:
        return tuple(sum((a - b) ** 2 for a, b in zip(x, self.center)) for x in self.probes)

    @property
    def certified(self) -> bool:
        d = self.distances_sq
        shrinking = all(b < a for a, b in zip(d, d[1:]))
        if self.center_value != 1 or not shrinking:
            return False
        if not self.locally_cone:
            return all(v == 0 for v in self.values)
        # probes halve their distance each step, so the deficits must halve too
        deficits = [1 - _upper(v) for v in self.values]
        monotone = all(0 <= b <= a for a, b in zip(deficits, deficits[1:]))
        return monotone and deficits[-1] * 2 ** (len(deficits) - 1) <= deficits[0]


def _upper(v) -> Fraction:
    return v.hi if isinstance(v, Interval) else v


def arc_probes(body: QuadraticCapBody, p, n: int) -> list[Point]:
    """Rational points of the curved arc converging to p.

    Lines through p with direction d + m g (d the arc tangent, g the inward
    gradient) meet the quadric again at p + s w with s = -(g.w) / Q(w, w),
    which is rational; m = 2^-j drives the points to p.
    """
    p = _pt(p)
    d = body.arc_direction(p)
    if d is None:
        raise ValueError("the curved arc does not pass through p inside the body")
    g = body.grad(p)
    out: list[Point] = []
    j = 1
    while len(out) < n:
        m = Fraction(1, 2**j)
        w = (d[0] + m * g[0], d[1] + m * g[1])
        s = -_dot(g, w) / body._Qx(w, w)
        x = (p[0] + s * w[0], p[1] + s * w[1])
        if body.contains(x) and x != p:
            out.append(x)
        j += 1
        if j > 200:
            raise RuntimeError("could not place arc probes")
    return out


def edge_probes(body: Body, p, n: int) -> list[Point]:
    """Boundary points along a flat boundary piece through p."""
    p = _pt(p)
    if isinstance(body, Polytope):
        if body.affine_dim == 0:
            raise ValueError("a single point has no boundary probes")
        # the nearest vertex different from p gives a direction inside the boundary
        if body.dim == 1 or body.affine_dim < body.dim:
            v = next(w for w in body.vertices if w != p)
        else:
            ring = list(body.vertices)
            if p in ring:
                i = ring.index(p)
                v = ring[(i + 1) % len(ring)]
            else:
                v = next(w for w, u in zip(ring, ring[1:] + ring[:1])
                         if _collinear(p, w, u) and _between(p, w, u))
        step = tuple(b - a for a, b in zip(p, v))
    else:
        act = body.active_linear(p)
        if not act:
            raise ValueError("no flat boundary piece through p")
        nrm = act[0][0]
        e = (-nrm[1], nrm[0])
        step = next(s for s in (e, (-e[0], -e[1]))
                    if body.contains((p[0] + s[0] / 2**20, p[1] + s[1] / 2**20)))
        # shrink until the first probe is inside
        while not body.contains(tuple(a + b / 2 for a, b in zip(p, step))):
            step = tuple(c / 2 for c in step)
    return [tuple(a + b / 2**i for a, b in zip(p, step)) for i in range(1, n + 1)]


def _collinear(p, a, b) -> bool:
    return (a[0] - p[0]) * (b[1] - p[1]) - (a[1] - p[1]) * (b[0] - p[0]) == 0


def _between(p, a, b) -> bool:
    return all(min(x, y) <= z <= max(x, y) for x, y, z in zip(a, b, p))


def discontinuity_witness(body: Body, p, n_probes: int = 10) -> BoundaryReport:
    """Probe h near a boundary point p.

    Not locally a cone: arc probes with h(p_i) = 0 exactly.  Locally a cone:
    probes along a flat boundary piece whose values climb back to 1.
    """
    p = _pt(p)
    cone = is_locally_cone(body, p)
    h = HomothetyFunction(body, p)
    probes = edge_probes(body, p, n_probes) if cone else arc_probes(body, p, n_probes)
    return BoundaryReport(p, cone, h(p), tuple(probes), tuple(h(x) for x in probes))
