"""Exact polyhedral geometry in dimensions 1-3.

Everything is computed over the rationals: hulls use integer orientation
determinants after scaling by a common denominator, envelopes are upper
hulls of lifted samples, and integrals triangulate each linear cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .exact import Echelon, Matrix, as_fraction, rref, solve

Point = tuple[Fraction, ...]


def point(*xs) -> Point:
    return tuple(as_fraction(x) for x in xs)


def _pt(x) -> Point:
    if isinstance(x, (int, Fraction, str)):
        return (as_fraction(x),)
    return tuple(as_fraction(c) for c in x)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _scale_to_ints(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    den = lcm(1, *(c.denominator for p in points for c in p))
    return [tuple(int(c * den) for c in p) for p in points], den


# --------------------------------------------------------------------------
# affine frames


@dataclass(frozen=True)
class _Frame:
    """Affine chart s = A (x - origin) of the affine hull of a point set."""

    origin: Point
    basis: tuple[Point, ...]
    A: tuple[Point, ...]  # r x n, A @ basis^T = I

    @property
    def r(self) -> int:
        return len(self.basis)

    def to_chart(self, x: Point) -> Point:
        d = _sub(x, self.origin)
        return tuple(_dot(row, d) for row in self.A)

    def from_chart(self, s: Point) -> Point:
        out = list(self.origin)
        for si, b in zip(s, self.basis):
            for j, bj in enumerate(b):
                out[j] += si * bj
        return tuple(out)

    def in_affine_hull(self, x: Point) -> bool:
        return self.from_chart(self.to_chart(x)) == tuple(x)


def _frame(points: Sequence[Point]) -> _Frame:
    n = len(points[0])
    o = points[0]
    ech = Echelon(n)
    basis = []
    for p in points[1:]:
        d = _sub(p, o)
        if ech.add(d):
            basis.append(d)
            if len(basis) == n:
                break
    r = len(basis)
    if r == n:
        unit = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return _Frame(tuple(Fraction(0) for _ in range(n)), unit, unit)
    if r == 0:
        return _Frame(o, (), ())
    _, piv = rref(Matrix.of(basis, n))
    # s solves B_J^T s = (x - o)_J ; A = (B_J^T)^{-1} composed with selecting J
    bjt = Matrix.of([[b[j] for b in basis] for j in piv], r)
    inv_cols = [solve(bjt, [int(i == k) for i in range(r)]) for k in range(r)]
    A = []
    for i in range(r):
        row = [Fraction(0)] * n
        for k, j in enumerate(piv):
            row[j] = inv_cols[k][i]
        A.append(tuple(row))
    return _Frame(o, tuple(basis), tuple(A))


# --------------------------------------------------------------------------
# low-level hulls


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2(pts: Sequence[tuple]) -> list[tuple]:
    """Andrew's monotone chain; CCW, collinear points dropped, start at lex-min."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _orient3(a, b, c, d) -> int:
    b0, b1, b2 = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    c0, c1, c2 = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    d0, d1, d2 = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    return b0 * (c1 * d2 - c2 * d1) - b1 * (c0 * d2 - c2 * d0) + b2 * (c0 * d1 - c1 * d0)


def _hull3(pts: Sequence[tuple[int, int, int]]) -> list[tuple[int, int, int]] | None:
    """Incremental 3D hull over integer points.

    Returns outward-oriented triangles (index triples), or None when the
    points are coplanar.  A face is visible from p only when p is strictly
    outside its plane, so coplanar points never split faces.
    """
    n = len(pts)
    if n < 4:
        return None
    i0 = 0
    i1 = next((i for i in range(n) if pts[i] != pts[i0]), None)
    if i1 is None:
        return None

    def cross_nonzero(i):
        a, b, c = pts[i0], pts[i1], pts[i]
        u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
        v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
        return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]) != (0, 0, 0)

    i2 = next((i for i in range(n) if cross_nonzero(i)), None)
    if i2 is None:
        return None
    i3 = next((i for i in range(n) if _orient3(pts[i0], pts[i1], pts[i2], pts[i]) != 0), None)
    if i3 is None:
        return None
    tet = (i0, i1, i2, i3)
    faces = []
    for skip in range(4):
        a, b, c = [tet[j] for j in range(4) if j != skip]
        d = tet[skip]
        if _orient3(pts[a], pts[b], pts[c], pts[d]) > 0:
            b, c = c, b
        faces.append((a, b, c))
    used = set(tet)
    for i in range(n):
        if i in used:
            continue
        p = pts[i]
        visible = [f for f in faces if _orient3(pts[f[0]], pts[f[1]], pts[f[2]], p) > 0]
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update(((a, b), (b, c), (c, a)))
        horizon = [(u, v) for (u, v) in edges if (v, u) not in edges]
        vis = set(visible)
        faces = [f for f in faces if f not in vis] + [(u, v, i) for (u, v) in horizon]
    return faces


def _plane(pa, pb, pc) -> tuple[tuple[int, int, int], int]:
    u = (pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2])
    v = (pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2])
    nrm = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    g = gcd(*nrm)
    nrm = tuple(c // g for c in nrm)
    return nrm, nrm[0] * pa[0] + nrm[1] * pa[1] + nrm[2] * pa[2]


# --------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Polytope:
    """Convex polytope in R^dim, stored by its vertices.

    Full-dimensional polygons keep their vertices counter-clockwise starting
    at the lexicographic minimum; everything else is sorted lexicographically.
    Build these with :func:`convex_hull`.
    """

    dim: int
    vertices: tuple[Point, ...]
    affine_dim: int

    @cached_property
    def _frame(self) -> _Frame:
        return _frame(list(self.vertices))

    @cached_property
    def _chart_halfspaces(self) -> list[tuple[Point, Fraction]]:
        fr = self._frame
        r = fr.r
        s = [fr.to_chart(v) for v in self.vertices]
        if r == 0:
            return []
        if r == 1:
            lo, hi = min(s), max(s)
            return [((Fraction(-1),), -lo[0]), ((Fraction(1),), hi[0])]
        if r == 2:
            ring = _hull2(s)
            out = []
            for u, v in zip(ring, ring[1:] + ring[:1]):
                nrm = (v[1] - u[1], u[0] - v[0])
                out.append((nrm, _dot(nrm, u)))
            return out
        ints, den = _scale_to_ints(s)
        faces = _hull3(ints)
        planes = {}
        for a, b, c in faces:
            nrm, off = _plane(ints[a], ints[b], ints[c])
            planes[nrm] = Fraction(off, den)
        return [(tuple(Fraction(x) for x in nrm), off) for nrm, off in planes.items()]

    def halfspaces(self) -> list[tuple[Point, Fraction]]:
        """H-representation {x : normal . x <= offset}; full-dimensional only."""
        if self.affine_dim != self.dim:
            raise ValueError("H-representation is only derived for full-dimensional polytopes")
        return list(self._chart_halfspaces)

    def contains(self, x) -> bool:
        x = _pt(x)
        fr = self._frame
        if not fr.in_affine_hull(x):
            return False
        s = fr.to_chart(x)
        return all(_dot(nrm, s) <= off for nrm, off in self._chart_halfspaces)

    def on_boundary(self, x) -> bool:
        x = _pt(x)
        if not self.contains(x):
            return False
        if self.affine_dim < self.dim:
            return True
        return any(_dot(nrm, x) == off for nrm, off in self._chart_halfspaces)

    def volume(self) -> Fraction:
        if self.affine_dim < self.dim:
            return Fraction(0)
        if self.dim == 1:
            return self.vertices[-1][0] - self.vertices[0][0]
        if self.dim == 2:
            return _polygon_area(self.vertices)
        ints, den = _scale_to_ints(list(self.vertices))
        c = ints[0]
        vol6 = sum(abs(_orient3(c, ints[a], ints[b], ints[d])) for a, b, d in _hull3(ints))
        return Fraction(vol6, 6 * den**3)

    def centroid_of_vertices(self) -> Point:
        n = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / n for i in range(self.dim))

    def scaled(self, m) -> "Polytope":
        m = as_fraction(m)
        return convex_hull([tuple(m * c for c in v) for v in self.vertices], self.dim)

    def vertex_set(self) -> frozenset[Point]:
        return frozenset(self.vertices)


def _polygon_area(ring: Sequence[Point]) -> Fraction:
    s = Fraction(0)
    for u, v in zip(ring, list(ring[1:]) + [ring[0]]):
        s += u[0] * v[1] - u[1] * v[0]
    return abs(s) / 2


def convex_hull(points: Iterable, dim: int | None = None) -> Polytope:
    """Exact convex hull of a nonempty point set in dimension 1, 2 or 3."""
    pts = sorted({_pt(p) for p in points})
    if not pts:
        raise ValueError("convex_hull needs at least one point")
    if dim is None:
        dim = len(pts[0])
    if dim not in (1, 2, 3) or any(len(p) != dim for p in pts):
        raise ValueError(f"points must all have dimension {dim} in 1..3")
    fr = _frame(pts)
    r = fr.r
    if r == 0:
        return Polytope(dim, (pts[0],), 0)
    chart = {fr.to_chart(p): p for p in pts}
    keys = list(chart)
    if r == 1:
        verts = sorted([chart[min(keys)], chart[max(keys)]])
    elif r == 2:
        ring = _hull2(keys)
        verts = [chart[s] for s in ring]
        if dim != 2:
            verts = sorted(verts)
    else:
        ints, _ = _scale_to_ints(keys)
        faces = _hull3(ints)
        verts = sorted({chart[keys[i]] for f in faces for i in f})
        # drop points lying in the relative interior of faces or edges
        verts = [v for v in verts if _is_extreme(v, verts)]
    return Polytope(dim, tuple(verts), r)


def _is_extreme(v: Point, verts: Sequence[Point]) -> bool:
    """v is extreme iff it is not in the hull of the other candidates (3D only)."""
    others = [w for w in verts if w != v]
    ints, den = _scale_to_ints(others + [v])
    faces = _hull3(ints[:-1])
    if faces is None:
        return True
    p = ints[-1]
    return any(_orient3(ints[a], ints[b], ints[c], p) > 0 for a, b, c in faces)


# --------------------------------------------------------------------------
# concave piecewise-linear functions


@dataclass(frozen=True)
class Facet:
    """One linear piece x -> gradient . x + constant, valid on ``cell``."""

    gradient: Point
    constant: Fraction
    cell: tuple[Point, ...]

    def __call__(self, x) -> Fraction:
        return _dot(self.gradient, _pt(x)) + self.constant


@dataclass(frozen=True)
class ConcavePL:
    domain: Polytope
    facets: tuple[Facet, ...]
    samples: tuple[tuple[Point, Fraction], ...] = field(repr=False, default=())

    def __call__(self, x) -> Fraction:
        x = _pt(x)
        if not self.domain.contains(x):
            raise ValueError(f"{x} is outside the domain")
        return min(f(x) for f in self.facets)

    def sample_map(self) -> dict[Point, Fraction]:
        return dict(self.samples)


def _upper_chain(pts: Sequence[tuple]) -> list[tuple]:
    pts = sorted(pts)
    out: list = []
    for p in pts:
        if out and out[-1][0] == p[0]:
            if out[-1][1] >= p[1]:
                continue
            out.pop()
        while len(out) >= 2 and _cross2(out[-2], out[-1], p) >= 0:
            out.pop()
        out.append(p)
    return out


def concave_envelope(samples: Iterable, domain: Polytope) -> ConcavePL:
    """Closed concave envelope of the function equal to the samples and 0 elsewhere.

    ``samples`` is an iterable of ``(point, value)`` with nonnegative values.
    The domain vertices are adjoined with value 0, so the result is the upper
    hull of the lifted set.
    """
    best: dict[Point, Fraction] = {}
    for p, v in samples:
        p, v = _pt(p), as_fraction(v)
        if v < 0:
            raise ValueError("envelope samples must be nonnegative")
        if not domain.contains(p):
            raise ValueError(f"sample point {p} lies outside the domain")
        if p not in best or v > best[p]:
            best[p] = v
    for w in domain.vertices:
        best.setdefault(w, Fraction(0))
    fr = domain._frame
    r = fr.r
    lifted = [(fr.to_chart(p), v) for p, v in best.items()]
    chart_facets: list[tuple[Point, Fraction, list[Point]]] = []
    if r == 0:
        chart_facets.append(((), max(v for _, v in lifted), [()]))
    elif r == 1:
        chain = _upper_chain([(s[0], v) for s, v in lifted])
        if len(chain) == 1:
            chart_facets.append(((Fraction(0),), chain[0][1], [(chain[0][0],)]))
        for (s0, z0), (s1, z1) in zip(chain, chain[1:]):
            h = (z1 - z0) / (s1 - s0)
            chart_facets.append(((h,), z0 - h * s0, [(s0,), (s1,)]))
    else:
        chart_facets = _upper_facets_2d([s + (v,) for s, v in lifted])
    facets = []
    for h, c, cell in chart_facets:
        grad = tuple(sum((h[i] * fr.A[i][j] for i in range(r)), Fraction(0)) for j in range(domain.dim))
        const = c - sum((h[i] * _dot(fr.A[i], fr.origin) for i in range(r)), Fraction(0))
        facets.append(Facet(grad, const, tuple(fr.from_chart(s) for s in cell)))
    facets.sort(key=lambda f: (f.gradient, f.constant))
    return ConcavePL(domain, tuple(facets), tuple(sorted(best.items())))


def _upper_facets_2d(lifted: list[Point]):
    ints, den = _scale_to_ints(lifted)
    faces = _hull3(ints)
    if faces is None:
        # lifted samples are coplanar: one non-vertical plane over the domain
        base = [p[:2] for p in lifted]
        a = lifted[0]
        b = next(p for p in lifted if p[:2] != a[:2])
        c = next(p for p in lifted if _cross2(a[:2], b[:2], p[:2]) != 0)
        m = Matrix.of([[a[0], a[1], 1], [b[0], b[1], 1], [c[0], c[1], 1]])
        hx, hy, c0 = solve(m, [a[2], b[2], c[2]])
        ring = _hull2(base)
        return [((hx, hy), c0, ring)]
    planes = {}
    for f in faces:
        nrm, off = _plane(ints[f[0]], ints[f[1]], ints[f[2]])
        if nrm[2] > 0:
            planes[nrm] = off
    out = []
    for nrm, off in planes.items():
        on = [p[:2] for p, q in zip(lifted, ints) if nrm[0] * q[0] + nrm[1] * q[1] + nrm[2] * q[2] == off]
        ring = _hull2(on)
        if len(ring) < 3:
            continue
        hx = Fraction(-nrm[0], nrm[2])
        hy = Fraction(-nrm[1], nrm[2])
        out.append(((hx, hy), Fraction(off, den * nrm[2]), ring))
    return out


def envelope_from_values(domain: Polytope, values: dict) -> ConcavePL:
    """Envelope through prescribed breakpoint values (closed-form golden functions)."""
    return concave_envelope(values.items(), domain)


def integrate(f: ConcavePL) -> Fraction:
    """Exact Lebesgue integral over the domain (zero for degenerate domains)."""
    dom = f.domain
    if dom.affine_dim < dom.dim:
        return Fraction(0)
    total = Fraction(0)
    if dom.dim == 1:
        for fc in f.facets:
            if len(fc.cell) < 2:
                continue
            a, b = fc.cell
            total += (b[0] - a[0]) * (fc(a) + fc(b)) / 2
        return total
    if dom.dim != 2:
        raise NotImplementedError("integration is implemented for 1- and 2-dimensional domains")
    for fc in f.facets:
        ring = fc.cell
        vals = [fc(v) for v in ring]
        for i in range(1, len(ring) - 1):
            area = abs(_cross2(ring[0], ring[i], ring[i + 1])) / 2
            total += area * (vals[0] + vals[i] + vals[i + 1]) / 3
    return total


# --------------------------------------------------------------------------
# a body with one curved boundary piece


@dataclass(frozen=True)
class QuadraticCapBody:
    """{x in R^2 : n_i . x <= b_i for all i, x^T Q x + L . x + c >= 0}.

    Q must be negative semidefinite so that the quadratic region is convex.
    """

    linear: tuple[tuple[Point, Fraction], ...]
    Q: tuple[Point, Point]
    L: Point
    c: Fraction

    def __post_init__(self):
        (a, b), (b2, d) = self.Q
        if b != b2:
            raise ValueError("Q must be symmetric")
        if a > 0 or d > 0 or a * d - b * b < 0:
            raise ValueError("Q must be negative semidefinite")

    dim = 2

    @classmethod
    def make(cls, linear, Q, L, c) -> "QuadraticCapBody":
        lin = tuple((_pt(nrm), as_fraction(off)) for nrm, off in linear)
        q = tuple(_pt(r) for r in Q)
        return cls(lin, q, _pt(L), as_fraction(c))

    def _Qx(self, x, y):
        return _dot(x, tuple(_dot(row, y) for row in self.Q))

    def q(self, x) -> Fraction:
        x = _pt(x)
        return self._Qx(x, x) + _dot(self.L, x) + self.c

    def grad(self, x) -> Point:
        x = _pt(x)
        return tuple(2 * _dot(row, x) + li for row, li in zip(self.Q, self.L))

    def contains(self, x) -> bool:
        x = _pt(x)
        return all(_dot(n, x) <= b for n, b in self.linear) and self.q(x) >= 0

    def on_boundary(self, x) -> bool:
        x = _pt(x)
        return self.contains(x) and (self.q(x) == 0 or any(_dot(n, x) == b for n, b in self.linear))

    def active_linear(self, x) -> list[tuple[Point, Fraction]]:
        x = _pt(x)
        return [(n, b) for n, b in self.linear if _dot(n, x) == b]

    def arc_direction(self, p) -> Point | None:
        """Tangent direction along which the curved arc stays in the body near p.

        None when p is off the quadric or the arc is cut away by the linear
        constraints there.
        """
        p = _pt(p)
        if self.q(p) != 0:
            return None
        g = self.grad(p)
        t = (-g[1], g[0])
        if t == (0, 0) or self._Qx(t, t) >= 0:
            return None
        act = self.active_linear(p)
        for s in (1, -1):
            d = (s * t[0], s * t[1])
            if all(_dot(n, d) < 0 for n, _ in act):
                return d
        return None


def quarter_disk() -> QuadraticCapBody:
    """{a >= 0, b >= 0, a^2 + b^2 <= 1}; the curved arc meets the a-axis at (1, 0)."""
    return QuadraticCapBody.make(
        linear=[((-1, 0), 0), ((0, -1), 0)],
        Q=[(-1, 0), (0, -1)],
        L=(0, 0),
        c=1,
    )


def disk_cap() -> QuadraticCapBody:
    """{0 <= a <= 1, b >= 0, a^2 + (1 - b)^2 <= 1}; the arc leaves the edge a = 0 at (0, 2)."""
    return QuadraticCapBody.make(
        linear=[((-1, 0), 0), ((1, 0), 1), ((0, -1), 0)],
        Q=[(-1, 0), (0, -1)],
        L=(0, 2),
        c=0,
    )


Body = Union[Polytope, QuadraticCapBody]


def is_locally_cone(body: Body, p) -> bool:
    """True iff near p the body agrees with p + (a convex cone)."""
    p = _pt(p)
    if not body.on_boundary(p):
        raise ValueError(f"{p} is not on the boundary of the body")
    if isinstance(body, Polytope):
        return True
    return body.arc_direction(p) is None


@dataclass(frozen=True)
class Interval:
    """Isolating interval for an irrational value."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= as_fraction(x) <= self.hi

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    from math import isqrt

    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _quadratic_bound(body: QuadraticCapBody, p: Point, x: Point, bits: int) -> Fraction | Interval:
    c0 = body.q(x)
    c2 = body.q(p)
    c1 = -2 * body._Qx(x, p) - _dot(body.L, x) - _dot(body.L, p) - 2 * body.c

    def g(t):
        return (c2 * t + c1) * t + c0

    if c0 == 0:
        if c1 < 0 or (c1 == 0 and c2 < 0):
            return Fraction(0)
        if c1 == 0 and c2 == 0:
            return Fraction(1)
        if c2 < 0:
            return min(Fraction(1), -c1 / c2)
        return Fraction(1)
    if g(Fraction(1)) > 0:
        return Fraction(1)
    disc = c1 * c1 - 4 * c2 * c0
    if c2 == 0:
        return min(Fraction(1), -c0 / c1)
    root = _rational_sqrt(disc)
    if root is not None:
        cands = [(-c1 - root) / (2 * c2), (-c1 + root) / (2 * c2)]
        inside = [r for r in cands if 0 < r <= 1 and g(r) == 0]
        return min(inside)
    lo, hi = Fraction(0), Fraction(1)
    while hi - lo > Fraction(1, 2**bits):
        mid = (lo + hi) / 2
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)


def homothety_sup(body: Body, p, x, bits: int = 40) -> Fraction | Interval:
    """sup{t in [0,1] : x in t p + (1 - t) body}.

    Linear constraints give rational bounds.  The quadratic constraint gives a
    root of a degree-2 polynomial in t; irrational roots come back as an
    :class:`Interval` of width at most 2**-bits.
    """
    p, x = _pt(p), _pt(x)
    if not body.contains(p):
        raise ValueError(f"center {p} is not in the body")
    if not body.contains(x):
        raise ValueError(f"{x} is not in the body")
    if x == p:
        return Fraction(1)
    if isinstance(body, Polytope):
        if body.affine_dim < body.dim:
            fr = body._frame
            sub = convex_hull([fr.to_chart(v) for v in body.vertices])
            return homothety_sup(sub, fr.to_chart(p), fr.to_chart(x), bits)
        cons = body.halfspaces()
    else:
        cons = list(body.linear)
    best = Fraction(1)
    for nrm, off in cons:
        a = _dot(nrm, x) - off
        b = _dot(nrm, p) - off
        if b < 0:
            best = min(best, a / b)
    if isinstance(body, Polytope):
        return best
    quad = _quadratic_bound(body, p, x, bits)
    if isinstance(quad, Fraction):
        return min(best, quad)
    if best <= quad.lo:
        return best
    return Interval(quad.lo, min(quad.hi, best))
