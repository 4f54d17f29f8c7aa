"""Independent reference computations used by the tests.

Nothing here reuses the package's elimination, hull or Taylor-jet code.
Multiplicity conditions come from symbolic partial derivatives, flag
valuations from the restriction recursion, hulls from brute force.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

X, Y, Z = sp.symbols("X Y Z")
VARS3 = (X, Y, Z)
VARS2 = (X, Y)


def monomial_list(nvars: int, degree: int):
    """Degree-n exponents in sympy's graded order (deliberately not the flag order)."""
    gens = VARS3[:nvars] if nvars == 3 else VARS2
    mons = sorted(sp.itermonomials(gens, degree, degree), key=sp.default_sort_key)
    return [tuple(sp.degree(m, g) for g in gens) for m in mons]


def generic_form(nvars: int, degree: int):
    gens = VARS3 if nvars == 3 else VARS2
    mons = monomial_list(nvars, degree)
    cs = sp.symbols(f"c0:{len(mons)}")
    F = sum(c * sp.prod([g**e for g, e in zip(gens, m)]) for c, m in zip(cs, mons))
    return F, cs, mons, gens


def vanishing_rows(F, cs, gens, point, order: int):
    """Rows: every partial derivative of order < ``order`` vanishes at the point."""
    rows = []
    subs = dict(zip(gens, [sp.Rational(str(c)) for c in point]))
    for r in range(order):
        for combo in itertools.combinations_with_replacement(gens, r):
            d = sp.diff(F, *combo) if combo else F
            expr = sp.expand(d.subs(subs))
            rows.append([expr.coeff(c) for c in cs])
    return rows


def conditions(nvars, degree, mults):
    """Linear conditions for the list of (point, multiplicity)."""
    F, cs, mons, gens = generic_form(nvars, degree)
    rows = []
    for p, m in mults:
        rows += vanishing_rows(F, cs, gens, p, m)
    return F, cs, mons, gens, rows


def dim_forms(nvars, degree, mults) -> int:
    F, cs, mons, gens, rows = conditions(nvars, degree, mults)
    if not rows:
        return len(mons)
    return len(mons) - sp.Matrix(rows).rank()


def _consistent(rows, rhs, n) -> bool:
    if not rows:
        return True
    A = sp.Matrix(rows)
    Ab = A.row_join(sp.Matrix(rhs))
    return A.rank() == Ab.rank()


def flag_key(e, flag):
    return tuple(e[i] for i in flag)


def achievable(nvars, degree, mults, flag=(0, 1)):
    """Flag vectors realised by sections: solve 'leading coefficient 1, earlier ones 0'."""
    F, cs, mons, gens, rows = conditions(nvars, degree, mults)
    out = set()
    keys = [flag_key(m, flag) for m in mons]
    for i, key in enumerate(keys):
        extra, rhs = [], []
        for j, other in enumerate(keys):
            if other < key:
                extra.append([int(k == j) for k in range(len(mons))])
                rhs.append(0)
        extra.append([int(k == i) for k in range(len(mons))])
        rhs.append(1)
        if _consistent(rows + extra, [0] * len(rows) + rhs, len(mons)):
            out.add(key)
    return out


def phi_tilde(nvars, degree, mults, val_point, key, flag=(0, 1)) -> int | None:
    """max t with a section of flag vector ``key`` and multiplicity >= t at val_point."""
    F, cs, mons, gens, rows = conditions(nvars, degree, mults)
    keys = [flag_key(m, flag) for m in mons]
    if key not in keys:
        return None
    i = keys.index(key)
    lead, rhs = [], []
    for j, other in enumerate(keys):
        if other < key:
            lead.append([int(k == j) for k in range(len(mons))])
            rhs.append(0)
    lead.append([int(k == i) for k in range(len(mons))])
    rhs.append(1)
    best = None
    for t in range(degree + 2):
        vrows = vanishing_rows(F, cs, gens, val_point, t)
        allrows = rows + vrows + lead
        if _consistent(allrows, [0] * (len(rows) + len(vrows)) + rhs, len(mons)):
            best = t
        else:
            break
    return best


def recursive_flag_valuation(expr) -> tuple[int, int]:
    """nu_1 = order along X = 0; nu_2 = order at [0:0:1] of the restriction to X = 0."""
    expr = sp.expand(expr)
    if expr == 0:
        raise ValueError("zero")
    nu1 = 0
    while sp.expand(expr.subs(X, 0)) == 0:
        expr = sp.expand(sp.cancel(expr / X))
        nu1 += 1
    s1 = sp.Poly(sp.expand(expr.subs({X: 0, Z: 1})), Y)
    nu2 = min(m[0] for m in s1.monoms())
    return nu1, nu2


def multiplicity(expr, point) -> int:
    """Order of vanishing from derivatives."""
    subs = dict(zip(VARS3, [sp.Rational(str(c)) for c in point]))
    r = 0
    while True:
        for combo in itertools.combinations_with_replacement(VARS3, r):
            d = sp.diff(expr, *combo) if combo else expr
            if sp.expand(d.subs(subs)) != 0:
                return r
        r += 1


# --------------------------------------------------------------------------
# geometry oracles


def _in_triangle(p, a, b, c) -> bool:
    def cross(o, u, v):
        return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])
    d1, d2, d3 = cross(a, b, p), cross(b, c, p), cross(c, a, p)
    neg = d1 < 0 or d2 < 0 or d3 < 0
    pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (neg and pos)


def _on_segment(p, a, b) -> bool:
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    return cross == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def brute_hull_vertices_2d(points) -> set:
    """A point is a vertex iff no triangle or segment of the other points contains it."""
    pts = list({tuple(Fraction(c) for c in p) for p in points})
    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        covered = any(_on_segment(p, a, b) for a, b in itertools.combinations(others, 2)) or any(
            _in_triangle(p, a, b, c) for a, b, c in itertools.combinations(others, 3)
            if (b[0] - a[0]) * (c[1] - a[1]) != (b[1] - a[1]) * (c[0] - a[0]))
        if not covered:
            out.add(p)
    return out


def shoelace(ring) -> Fraction:
    s = Fraction(0)
    for i in range(len(ring)):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % len(ring)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


# --------------------------------------------------------------------------
# symbolic integrals


a_, b_, lam_ = sp.symbols("a b lambda", nonnegative=True)


def blowup_integral_symbolic(kind: str):
    """Integral of the known function over {0 <= a <= 1 - lam, 0 <= b <= 1 - a} in lambda."""
    if kind == "P0":
        return sp.expand(sp.integrate(sp.integrate(a_ + b_, (b_, 0, 1 - a_)), (a_, 0, 1 - lam_)))
    # split the b-range at the crease a + b = 1 - lam
    low = sp.integrate(1 - a_, (b_, 0, 1 - lam_ - a_))
    high = sp.integrate(2 - 2 * a_ - b_ - lam_, (b_, 1 - lam_ - a_, 1 - a_))
    return sp.expand(sp.integrate(low + high, (a_, 0, 1 - lam_)))
