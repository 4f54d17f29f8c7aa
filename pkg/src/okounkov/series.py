"""Graded linear series on P^1, P^2 and blow-ups of P^2 at one or two points.

A level-k piece V_k is the space of degree k*d forms on P^2 (or P^1) whose
multiplicity at each blown-up point P_i is at least k*lambda_i.  Forms are
coefficient vectors over the monomials of that degree, listed in flag order,
and V_k is cut out by jet conditions.

Fixed coordinates: P^2 = {[X:Y:Z]}, flag line {X=0}, flag point [0:0:1];
P^1 = {[X:Y]}, flag point [0:1].  The flag is given by coordinate indices:
``flag=(i, j)`` means the line {x_i = 0} and on it the point {x_i = x_j = 0}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, lcm
from typing import Iterable, Iterator

from .exact import Echelon, Matrix, as_fraction, integer_row, kernel_basis

Exponent = tuple[int, ...]
Poly = dict  # Exponent -> Fraction

MODELS = ("P1", "P2", "BlowupP2")


def proj_point(*coords) -> tuple[Fraction, ...]:
    """Projective point normalized so its first nonzero coordinate is 1."""
    cs = [as_fraction(c) for c in coords]
    lead = next((c for c in cs if c != 0), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(c / lead for c in cs)


def parse_point(text: str) -> tuple[Fraction, ...]:
    return proj_point(*text.replace(",", ":").split(":"))


# Default points used throughout the examples.
P0 = proj_point(0, 0, 1)
P1_DEFAULT = proj_point(1, 0, 0)
P2_GENERIC = proj_point(1, 1, 1)
P2_COLLINEAR = proj_point(1, 0, 1)
CURVE_P = proj_point(0, 1)
CURVE_Q = proj_point(1, 1)


@dataclass(frozen=True)
class GeometrySpec:
    model: str
    blown_up_points: tuple[tuple[Fraction, ...], ...] = ()
    flag: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        n = self.nvars
        if self.flag is None:
            object.__setattr__(self, "flag", (0,) if n == 2 else (0, 1))
        flag = self.flag
        if len(flag) != n - 1 or len(set(flag)) != len(flag) or not all(0 <= i < n for i in flag):
            raise ValueError(f"bad flag {flag} for {self.model}")
        pts = tuple(proj_point(*p) for p in self.blown_up_points)
        object.__setattr__(self, "blown_up_points", pts)
        if self.model == "BlowupP2":
            if len(pts) not in (1, 2):
                raise ValueError("BlowupP2 needs one or two blown-up points")
        elif pts:
            raise ValueError(f"{self.model} has no blown-up points")
        for p in pts:
            if len(p) != 3:
                raise ValueError("blown-up points live in P^2")
            if p[flag[0]] == 0:
                raise ValueError(f"blown-up point {p} lies on the flag line")
        if len(set(pts)) != len(pts):
            raise ValueError("blown-up points must be distinct")

    @classmethod
    def p1(cls) -> "GeometrySpec":
        return cls("P1")

    @classmethod
    def p2(cls, flag=(0, 1)) -> "GeometrySpec":
        return cls("P2", (), tuple(flag))

    @classmethod
    def blowup(cls, *points, flag=(0, 1)) -> "GeometrySpec":
        return cls("BlowupP2", tuple(points), tuple(flag))

    @property
    def nvars(self) -> int:
        return 2 if self.model == "P1" else 3

    @property
    def dim(self) -> int:
        """Dimension of the variety (length of flag vectors)."""
        return self.nvars - 1

    @property
    def flag_point(self) -> tuple[Fraction, ...]:
        rest = [i for i in range(self.nvars) if i not in self.flag]
        return tuple(Fraction(int(i == rest[0])) for i in range(self.nvars))

    @property
    def flag_line_form(self) -> "ValuationSpec":
        """Valuation along the divisorial part of the flag (surfaces only)."""
        e = [0] * self.nvars
        e[self.flag[0]] = 1
        return ValuationSpec.along_curve({tuple(e): 1})


@dataclass(frozen=True)
class DivisorClass:
    """d*H - sum lambda_i E_i (just d*H on P^1 and P^2)."""

    degree: Fraction
    multiplicities: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degree", as_fraction(self.degree))
        object.__setattr__(self, "multiplicities", tuple(as_fraction(m) for m in self.multiplicities))
        if self.degree < 0 or any(m < 0 for m in self.multiplicities):
            raise ValueError("degree and multiplicities must be nonnegative")

    def scaled(self, m) -> "DivisorClass":
        m = as_fraction(m)
        return DivisorClass(self.degree * m, tuple(x * m for x in self.multiplicities))

    @property
    def step(self) -> int:
        """Smallest k with k*d and all k*lambda_i integral."""
        return lcm(self.degree.denominator, *(m.denominator for m in self.multiplicities))

    def is_big(self) -> bool:
        # one point: big iff d > 0 and lambda < d; beyond that only d > 0 is checked
        if self.degree <= 0:
            return False
        if len(self.multiplicities) == 1:
            return self.multiplicities[0] < self.degree
        return True


# --------------------------------------------------------------------------
# polynomials


def monomials(nvars: int, n: int, flag: tuple[int, ...]) -> list[Exponent]:
    """All degree-n exponents, sorted by their flag vectors."""
    if nvars == 2:
        mons = [(a, n - a) for a in range(n + 1)]
    else:
        mons = [(a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)]
    return sorted(mons, key=lambda e: tuple(e[i] for i in flag))


def flag_key(e: Exponent, flag: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(e[i] for i in flag)


def _chart(point) -> tuple[int, list[int]]:
    j = next(i for i, c in enumerate(point) if c != 0)
    return j, [i for i in range(len(point)) if i != j]


def taylor(e: Exponent, point, max_order: int | None = None) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of x^e expanded at ``point`` in the affine chart where it is 1."""
    j, others = _chart(point)
    out = {(): Fraction(1)}
    for i in others:
        p, ei = point[i], e[i]
        choices = [(ei, Fraction(1))] if p == 0 else [(a, comb(ei, a) * p ** (ei - a)) for a in range(ei + 1)]
        out = {k + (a,): v * w for k, v in out.items() for a, w in choices}
    if max_order is not None:
        out = {k: v for k, v in out.items() if sum(k) < max_order}
    return out


def jet_rows(mons: list[Exponent], point, lo: int, hi: int) -> list[dict[int, Fraction]]:
    """Rows expressing that every Taylor coefficient of order in [lo, hi) vanishes at point."""
    if hi <= lo:
        return []
    rows: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for col, e in enumerate(mons):
        for alpha, v in taylor(e, point, hi).items():
            if sum(alpha) >= lo:
                rows.setdefault(alpha, {})[col] = v
    return [rows[a] for a in sorted(rows)]


def multiplicity(f: Poly, point) -> int:
    """Order of vanishing of a nonzero form at a point."""
    acc: dict[tuple[int, ...], Fraction] = {}
    for e, c in f.items():
        for alpha, v in taylor(e, point).items():
            acc[alpha] = acc.get(alpha, 0) + c * v
    orders = [sum(a) for a, v in acc.items() if v != 0]
    if not orders:
        raise ValueError("the zero form has no multiplicity")
    return min(orders)


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: Fraction(c) for e, c in out.items() if c != 0}


def poly_pow(g: Poly, t: int, nvars: int) -> Poly:
    out: Poly = {tuple([0] * nvars): Fraction(1)}
    for _ in range(t):
        out = poly_mul(out, g)
    return out


def poly_divide(f: Poly, g: Poly) -> Poly | None:
    """Exact quotient f/g, or None if g does not divide f."""
    r = {e: Fraction(c) for e, c in f.items() if c != 0}
    lg = max(g)
    cg = Fraction(g[lg])
    q: Poly = {}
    while r:
        lt = max(r)
        if any(a < b for a, b in zip(lt, lg)):
            return None
        m = tuple(a - b for a, b in zip(lt, lg))
        c = r[lt] / cg
        q[m] = c
        for e, v in g.items():
            k = tuple(a + b for a, b in zip(m, e))
            w = r.get(k, 0) - c * v
            if w:
                r[k] = w
            else:
                r.pop(k, None)
    return q


def curve_order(f: Poly, g: Poly) -> int:
    if not f:
        raise ValueError("the zero form has no order")
    t = 0
    while True:
        q = poly_divide(f, g)
        if q is None:
            return t
        f, t = q, t + 1


# --------------------------------------------------------------------------
# valuations


@dataclass(frozen=True)
class ValuationSpec:
    """A geometric valuation: order at a point, along a curve, or along E_i."""

    kind: str
    point: tuple[Fraction, ...] | None = None
    form: tuple[tuple[Exponent, Fraction], ...] | None = None
    index: int | None = None

    @classmethod
    def at_point(cls, *coords) -> "ValuationSpec":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return cls("point", point=proj_point(*coords))

    @classmethod
    def along_curve(cls, form: dict) -> "ValuationSpec":
        items = tuple(sorted((tuple(e), as_fraction(c)) for e, c in form.items() if c != 0))
        if not items:
            raise ValueError("curve form must be nonzero")
        degs = {sum(e) for e, _ in items}
        if len(degs) != 1:
            raise ValueError("curve form must be homogeneous")
        return cls("curve", form=items)

    @classmethod
    def along_exceptional(cls, i: int = 0) -> "ValuationSpec":
        return cls("exceptional", index=i)

    @property
    def label(self) -> str:
        if self.kind == "point":
            return "ord@[" + ":".join(str(c) for c in self.point) + "]"
        if self.kind == "exceptional":
            return f"ord_E{self.index + 1}"
        return "ord_curve"

    @property
    def poly(self) -> Poly:
        return dict(self.form)

    def _monomial_index(self) -> int | None:
        # single-variable linear form x_i gives coordinate conditions
        if len(self.form) == 1:
            e, _ = self.form[0]
            if sum(e) == 1:
                return e.index(1)
        return None

    def constraint_rows(self, V: "LinearSeries", lo: int, hi: int) -> list:
        """Rows cutting F_hi V_k out of F_lo V_k (for curve forms: out of V_k)."""
        mons = V.monomials
        if self.kind == "point":
            self._check_point(V)
            return jet_rows(mons, self.point, lo, hi)
        if self.kind == "exceptional":
            p = V.geometry.blown_up_points[self.index]
            m = V.required_multiplicities[self.index]
            return jet_rows(mons, p, m + lo, m + hi)
        i = self._monomial_index()
        if i is not None:
            return [{c: 1} for c, e in enumerate(mons) if lo <= e[i] < hi]
        return self._annihilator(V, hi)

    def _annihilator(self, V: "LinearSeries", t: int) -> list:
        n, nv = V.degree, V.geometry.nvars
        g = self.poly
        dg = sum(next(iter(g)))
        if t * dg > n:
            return [{c: 1} for c in range(len(V.monomials))]
        gt = poly_pow(g, t, nv)
        image = []
        for e in monomials(nv, n - t * dg, (0,) if nv == 2 else (0, 1)):
            prod = poly_mul(gt, {e: Fraction(1)})
            image.append([prod.get(m, 0) for m in V.monomials])
        if not image:
            return []
        return [dict(enumerate(v)) for v in kernel_basis(Matrix.of(image, len(V.monomials)))]

    def _check_point(self, V: "LinearSeries"):
        if len(self.point) != V.geometry.nvars:
            raise ValueError(f"valuation point {self.point} does not live on {V.geometry.model}")

    def value(self, f: Poly, V: "LinearSeries") -> int:
        """nu(f) for a nonzero section f of V."""
        if self.kind == "point":
            return multiplicity(f, self.point)
        if self.kind == "exceptional":
            p = V.geometry.blown_up_points[self.index]
            return multiplicity(f, p) - V.required_multiplicities[self.index]
        return curve_order(f, self.poly)


# --------------------------------------------------------------------------
# linear series


@dataclass(frozen=True)
class LinearSeries:
    """The level-k piece V_k of the complete series of a divisor class."""

    geometry: GeometrySpec
    divisor: DivisorClass
    level: int

    def __post_init__(self):
        k = self.level
        if k < 1:
            raise ValueError("level must be positive")
        vals = [k * self.divisor.degree] + [k * m for m in self.divisor.multiplicities]
        if any(v.denominator != 1 for v in vals):
            raise ValueError(f"level {k} does not clear denominators of {self.divisor}")
        if len(self.divisor.multiplicities) != len(self.geometry.blown_up_points):
            raise ValueError("one multiplicity per blown-up point is required")

    @cached_property
    def degree(self) -> int:
        return int(self.level * self.divisor.degree)

    @cached_property
    def required_multiplicities(self) -> tuple[int, ...]:
        return tuple(int(self.level * m) for m in self.divisor.multiplicities)

    @cached_property
    def monomials(self) -> list[Exponent]:
        return monomials(self.geometry.nvars, self.degree, self.geometry.flag)

    @cached_property
    def flag_vectors(self) -> list[tuple[int, ...]]:
        return [flag_key(e, self.geometry.flag) for e in self.monomials]

    @cached_property
    def constraints(self) -> list:
        rows = []
        for p, m in zip(self.geometry.blown_up_points, self.required_multiplicities):
            rows.extend(jet_rows(self.monomials, p, 0, m))
        return rows

    @cached_property
    def echelon(self) -> Echelon:
        return Echelon(len(self.monomials)).extend(self.constraints)

    @property
    def dim(self) -> int:
        return self.echelon.kernel_dim()

    @cached_property
    def basis(self) -> list[tuple[Fraction, ...]]:
        ncols = len(self.monomials)
        if not self.constraints:
            return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
        return kernel_basis(Matrix.of([[r.get(c, 0) for c in range(ncols)] for r in self.constraints], ncols))

    def to_poly(self, vec) -> Poly:
        return {e: Fraction(c) for e, c in zip(self.monomials, vec) if c != 0}

    def from_poly(self, f: Poly) -> list[Fraction]:
        idx = {e: i for i, e in enumerate(self.monomials)}
        v = [Fraction(0)] * len(self.monomials)
        for e, c in f.items():
            if e not in idx:
                raise ValueError(f"monomial {e} has the wrong degree for this series")
            v[idx[e]] = Fraction(c)
        return v

    def contains(self, f: Poly) -> bool:
        if not f:
            return True
        if any(sum(e) != self.degree for e in f):
            return False
        v = self.from_poly(f)
        return all(sum((c * v[i] for i, c in r.items()), Fraction(0)) == 0 for r in self.constraints)

    def filtered_echelon(self, val: ValuationSpec, t: int) -> Echelon:
        """Echelon form whose kernel is F_t V_k = {s in V_k : val(s) >= t}."""
        return self.echelon.copy().extend(val.constraint_rows(self, 0, t))


@lru_cache(maxsize=None)
def build_series(g: GeometrySpec, d: DivisorClass, k: int) -> LinearSeries:
    return LinearSeries(g, d, k)


def subspace_with_vanishing(V: LinearSeries, val: ValuationSpec, t: int) -> list[tuple[Fraction, ...]]:
    """Basis of {s in V_k : val(s) >= t}."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    rows = list(V.constraints) + list(val.constraint_rows(V, 0, t))
    ncols = len(V.monomials)
    if not rows:
        return list(V.basis)
    return kernel_basis(Matrix.of([[r.get(c, 0) for c in range(ncols)] for r in rows], ncols))


@lru_cache(maxsize=None)
def filtration_steps(V: LinearSeries, val: ValuationSpec) -> tuple[tuple[int, frozenset[int]], ...]:
    """(dim F_t, free columns of F_t) for t = 0, 1, ... up to the first zero space."""
    ech = V.echelon.copy()
    out = []
    t = 0
    incremental = val.kind != "curve" or val._monomial_index() is not None
    while True:
        free = frozenset(ech.free_columns())
        out.append((len(free), free))
        if not free:
            return tuple(out)
        if incremental:
            ech.extend(val.constraint_rows(V, t, t + 1))
        else:
            ech = V.echelon.copy().extend(val.constraint_rows(V, 0, t + 1))
        t += 1


@dataclass(frozen=True)
class SeriesFamily:
    """The graded series V_. of a divisor class: k -> V_k for integral levels k."""

    geometry: GeometrySpec
    divisor: DivisorClass

    @property
    def step(self) -> int:
        return self.divisor.step

    @property
    def dim(self) -> int:
        return self.geometry.dim

    def has_level(self, k: int) -> bool:
        return k >= 1 and k % self.step == 0

    def level(self, k: int) -> LinearSeries:
        return build_series(self.geometry, self.divisor, k)

    def levels(self, K: int) -> Iterator[LinearSeries]:
        for k in range(self.step, K + 1, self.step):
            yield self.level(k)

    def veronese(self, m: int) -> "SeriesFamily":
        """V_{m.}: level k of the result is level mk of this family."""
        return SeriesFamily(self.geometry, self.divisor.scaled(m))


def family(model: str, degree, points: Iterable = (), multiplicities: Iterable = (), flag=None) -> SeriesFamily:
    g = GeometrySpec(model, tuple(points), None if flag is None else tuple(flag))
    return SeriesFamily(g, DivisorClass(as_fraction(degree), tuple(as_fraction(m) for m in multiplicities)))


def leading_vector(f: Poly, flag: tuple[int, ...]) -> tuple[int, ...]:
    if not f:
        raise ValueError("the zero section has no flag valuation")
    return min(flag_key(e, flag) for e in f)


def integer_vector(v) -> dict[int, int]:
    return integer_row(v)
