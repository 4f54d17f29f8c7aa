"""Okounkov functions from level-k data: concave envelopes and t-slices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .body import okounkov_body, slice_points
from .exact import as_fraction
from .geometry import ConcavePL, Point, Polytope, concave_envelope, convex_hull, _pt
from .series import LinearSeries, SeriesFamily, ValuationSpec, filtration_steps


@dataclass(frozen=True)
class FunctionSample:
    v: Point
    level: int
    value: Fraction


def _value_ceiling(V: LinearSeries, val: ValuationSpec) -> int:
    """An integer t with F_t V = 0."""
    n = V.degree
    if val.kind == "point":
        return n + 1
    if val.kind == "exceptional":
        return n - V.required_multiplicities[val.index] + 1
    return n // sum(val.form[0][0]) + 1


def phi_sample(F: SeriesFamily, val: ValuationSpec, v, k: int) -> FunctionSample | None:
    """(1/k) max{t : some s in F_t V_k has nu(s) = k v}; None when k v is not achieved.

    Binary search over t: the column of k v is free in the echelon form of
    F_t V_k exactly when dim(F_t ∩ W_>=) exceeds dim(F_t ∩ W_>).
    """
    v = tuple(as_fraction(x) for x in v)
    if not F.has_level(k):
        return None
    target = tuple(x * k for x in v)
    if any(x.denominator != 1 for x in target):
        return None
    V = F.level(k)
    try:
        col = V.flag_vectors.index(tuple(int(x) for x in target))
    except ValueError:
        return None
    if not V.echelon.is_free(col):
        return None
    lo, hi = 0, _value_ceiling(V, val)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if V.filtered_echelon(val, mid).is_free(col):
            lo = mid
        else:
            hi = mid
    return FunctionSample(v, k, Fraction(lo, k))


def level_samples(V: LinearSeries, val: ValuationSpec) -> dict[Point, Fraction]:
    """phi-tilde at every valuation point of V_k, from one sweep over t."""
    steps = filtration_steps(V, val)
    k = V.level
    best: dict[int, int] = {}
    for t, (_, free) in enumerate(steps):
        for c in free:
            best[c] = t
    vecs = V.flag_vectors
    return {tuple(Fraction(x, k) for x in vecs[c]): Fraction(t, k) for c, t in best.items()}


def samples_up_to(F: SeriesFamily, val: ValuationSpec, K: int) -> dict[Point, Fraction]:
    """Best sample value at each normalized valuation point over levels <= K."""
    out: dict[Point, Fraction] = {}
    for V in F.levels(K):
        for v, t in level_samples(V, val).items():
            if v not in out or t > out[v]:
                out[v] = t
    return out


def okounkov_function_envelope(F: SeriesFamily, val: ValuationSpec, K: int) -> ConcavePL:
    """Concave envelope of the samples over the level-K body (a lower approximation)."""
    samples = samples_up_to(F, val, K)
    if not samples:
        raise ValueError(f"no nonzero sections at levels up to {K}")
    domain = convex_hull(samples, F.dim)
    return concave_envelope(samples.items(), domain)


class SliceFunction:
    """psi(x) = max{t in grid : x in the body of k -> F_{ceil(tk)} V_k}, truncated at K."""

    def __init__(self, F: SeriesFamily, val: ValuationSpec, K: int, t_grid: Iterable):
        grid = sorted({as_fraction(t) for t in t_grid})
        if not grid or grid[0] < 0:
            raise ValueError("the t-grid must be nonempty and nonnegative")
        self.K = K
        self.domain = okounkov_body(F, K).body
        self.levels: list[tuple[Fraction, Polytope]] = []
        for t in grid:
            pts = slice_points(F, val, t, K)
            if not pts:
                break
            self.levels.append((t, convex_hull(pts, F.dim)))

    @property
    def t_grid(self) -> list[Fraction]:
        return [t for t, _ in self.levels]

    def __call__(self, x) -> Fraction:
        x = _pt(x)
        if not self.domain.contains(x):
            raise ValueError(f"{x} is outside the body")
        best = Fraction(0)
        # slices are nested, so stop at the first miss
        for t, body in self.levels:
            if not body.contains(x):
                break
            best = t
        return best


def t_grid(top, denominator_bound: int) -> list[Fraction]:
    """All p/q in [0, top] with q <= denominator_bound."""
    top = as_fraction(top)
    return sorted({Fraction(p, q) for q in range(1, denominator_bound + 1)
                   for p in range(int(top * q) + 1)})


def okounkov_function_slices(F: SeriesFamily, val: ValuationSpec, K: int, grid=None,
                             denominator_bound: int = 12) -> SliceFunction:
    if grid is None:
        top = max(samples_up_to(F, val, K).values())
        grid = t_grid(top, denominator_bound)
    return SliceFunction(F, val, K, grid)


def grid_points(domain: Polytope, denominator: int) -> list[Point]:
    """Points of (1/denominator) Z^n inside the domain."""
    lo = [min(v[i] for v in domain.vertices) for i in range(domain.dim)]
    hi = [max(v[i] for v in domain.vertices) for i in range(domain.dim)]
    axes = [range(int(l * denominator) - 1, int(h * denominator) + 2) for l, h in zip(lo, hi)]
    out = [()]
    for ax in axes:
        out = [p + (Fraction(a, denominator),) for p in out for a in ax]
    return [p for p in out if domain.contains(p)]


# --------------------------------------------------------------------------
# structural identities


@dataclass(frozen=True)
class IdentityCheck:
    x: Point
    lhs: Fraction
    rhs: Fraction

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]
    skipped: tuple[Point, ...] = ()

    @property
    def max_residual(self) -> Fraction:
        return max((abs(c.residual) for c in self.checks), default=Fraction(0))

    @property
    def ok(self) -> bool:
        return self.max_residual == 0


def flag_divisor_value(F: SeriesFamily, val: ValuationSpec) -> int:
    """nu(Y_1) for the flag line Y_1 = {x_i = 0}, seen as a section of V_1."""
    if F.geometry.model != "P2" or F.divisor.degree != 1:
        raise ValueError("the reduction identity needs Y_1 in |D|, i.e. O(1) on P^2")
    V = F.level(1)
    e = [0, 0, 0]
    e[F.geometry.flag[0]] = 1
    return val.value({tuple(e): Fraction(1)}, V)


def check_reduction(F: SeriesFamily, val: ValuationSpec, samples: Sequence, K: int = 3,
                    phi: ConcavePL | None = None) -> IdentityReport:
    """phi(x) against (1 - x1) phi(0, x'/(1 - x1)) + x1 nu(Y_1)."""
    nu = flag_divisor_value(F, val)
    phi = phi or okounkov_function_envelope(F, val, K)
    checks, skipped = [], []
    for x in samples:
        x = _pt(x)
        x1 = x[0]
        if x1 == 1:
            skipped.append(x)
            continue
        inner = (Fraction(0),) + tuple(c / (1 - x1) for c in x[1:])
        checks.append(IdentityCheck(x, phi(x), (1 - x1) * phi(inner) + x1 * nu))
    return IdentityReport(tuple(checks), tuple(skipped))


def check_homogeneity(F: SeriesFamily, val: ValuationSpec, m: int, samples: Sequence,
                      K: int = 3) -> IdentityReport:
    """phi_{V_{m.}}(m x) against m phi_{V.}(x), both at level budget K."""
    if m < 1:
        raise ValueError("m must be positive")
    phi = okounkov_function_envelope(F, val, K)
    phim = okounkov_function_envelope(F.veronese(m), val, K)
    checks = []
    for x in samples:
        x = _pt(x)
        checks.append(IdentityCheck(x, phim(tuple(m * c for c in x)), m * phi(x)))
    return IdentityReport(tuple(checks))
