"""Discrete semigroups in Z^n (n <= 3), their regularization and subadditive limits."""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, isqrt, lcm
from typing import Callable, Iterable, Sequence

from .exact import Matrix, as_fraction, integer_row, kernel_basis, rank, rref


class OrientationError(ValueError):
    """A sequence or function failed its declared super/subadditivity."""


class SubadditivityViolation(OrientationError):
    def __init__(self, u, v, fu, fv, fuv):
        self.u, self.v = u, v
        self.values = (fu, fv, fuv)
        super().__init__(f"f({u}+{v}) = {fuv} exceeds f({u}) + f({v}) = {fu + fv}")


IntVec = tuple[int, ...]


def _hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form (echelon with positive pivots, reduced above)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    n = len(a[0])
    out: list[list[int]] = []
    for c in range(n):
        live = [r for r in a if r[c] != 0]
        rest = [r for r in a if r[c] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[c] // p[c]
                r = [x - q * y for x, y in zip(r, p)]
                (nxt if r[c] else rest).append(r)
            live = nxt
        if live:
            p = live[0]
            if p[c] < 0:
                p = [-x for x in p]
            out.append(p)
        a = [r for r in rest if any(r)]
    for i, r in enumerate(out):
        c = next(j for j, x in enumerate(r) if x)
        for h in range(i):
            q = out[h][c] // r[c]
            out[h] = [x - q * y for x, y in zip(out[h], r)]
    return out


@dataclass(frozen=True)
class DiscreteSemigroup:
    generators: tuple[IntVec, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not gens:
            raise ValueError("at least one generator is required")
        n = len(gens[0])
        if not 1 <= n <= 3 or any(len(g) != n for g in gens):
            raise ValueError("generators must share a dimension between 1 and 3")
        object.__setattr__(self, "generators", tuple(g for g in gens if any(g)) or gens[:1])

    @classmethod
    def of(cls, *gens) -> "DiscreteSemigroup":
        return cls(tuple((g,) if isinstance(g, int) else tuple(g) for g in gens))

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @cached_property
    def spanned_group(self) -> list[list[int]]:
        """Basis of ZS in Hermite normal form."""
        return _hnf(self.generators)

    def in_group(self, x) -> bool:
        x = [int(c) for c in x]
        for row in self.spanned_group:
            c = next(j for j, v in enumerate(row) if v)
            if any(x[:c]):
                return False
            if x[c] % row[c]:
                return False
            q = x[c] // row[c]
            x = [a - q * b for a, b in zip(x, row)]
        return not any(x)

    @cached_property
    def _span_basis(self) -> list[list[Fraction]]:
        return rref(Matrix.of(self.generators))[0]

    @cached_property
    def cone_inequalities(self) -> list[tuple[Fraction, ...]]:
        """Inward normals h (inside the linear span) with h.g >= 0 on every generator."""
        basis = self._span_basis
        r = len(basis)
        gens = self.generators
        found = set()
        if r == 0:
            return []
        for sub in itertools.combinations(gens, r - 1):
            if sub and rank(Matrix.of(sub)) < r - 1:
                continue
            # h = sum c_i basis_i orthogonal to the chosen generators
            if sub:
                m = Matrix.of([[sum(b * g for b, g in zip(bi, s)) for bi in basis] for s in sub], r)
                ker = kernel_basis(m)
            else:
                ker = [tuple(Fraction(int(i == 0)) for i in range(r))]
            if len(ker) != 1:
                continue
            c = ker[0]
            h = tuple(sum((ci * bi[j] for ci, bi in zip(c, basis)), Fraction(0)) for j in range(self.dim))
            signs = {(_sgn(sum(a * b for a, b in zip(h, g)))) for g in gens} - {0}
            if len(signs) == 1:
                if signs == {-1}:
                    h = tuple(-x for x in h)
                row = integer_row(h)
                found.add(tuple(Fraction(row.get(j, 0)) for j in range(self.dim)))
        return sorted(found)

    def in_span(self, x) -> bool:
        basis = self._span_basis
        return rank(Matrix.of(list(basis) + [list(x)], self.dim)) == len(basis)

    def in_cone(self, x) -> bool:
        """Membership in the closed cone C(S)."""
        x = tuple(as_fraction(c) for c in x)
        return self.in_span(x) and all(_dot(h, x) >= 0 for h in self.cone_inequalities)

    def in_cone_interior(self, x) -> bool:
        """Membership in the relative interior of C(S)."""
        x = tuple(as_fraction(c) for c in x)
        return self.in_span(x) and all(_dot(h, x) > 0 for h in self.cone_inequalities)

    @cached_property
    def grading(self) -> tuple[Fraction, ...]:
        """A linear functional positive on every generator (pointed cones only)."""
        w = [Fraction(0)] * self.dim
        for h in self.cone_inequalities:
            w = [a + b for a, b in zip(w, h)]
        if not self.cone_inequalities or any(_dot(w, g) <= 0 for g in self.generators):
            raise ValueError("the cone of the semigroup is not pointed")
        return tuple(w)

    def members_in_box(self, box) -> set[IntVec]:
        """S ∩ box, by breadth-first search over sums of generators."""
        box = _box(box, self.dim)
        w = self.grading
        top = max(_dot(w, corner) for corner in itertools.product(*box))
        zero = tuple([0] * self.dim)
        seen = {zero}
        queue = deque([zero])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = tuple(a + b for a, b in zip(x, g))
                if y not in seen and _dot(w, y) <= top:
                    seen.add(y)
                    queue.append(y)
        return {x for x in seen if _in_box(x, box)}

    def regularization_in_box(self, box) -> set[IntVec]:
        box = _box(box, self.dim)
        return {x for x in itertools.product(*(range(lo, hi + 1) for lo, hi in box))
                if regularization_membership(self, x)}


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _box(box, n: int) -> list[tuple[int, int]]:
    if isinstance(box, int):
        return [(0, box)] * n
    box = [tuple(int(v) for v in b) for b in box]
    if len(box) != n:
        raise ValueError(f"box needs {n} coordinate ranges")
    return box


def _in_box(x, box) -> bool:
    return all(lo <= c <= hi for c, (lo, hi) in zip(x, box))


def regularization_membership(S: DiscreteSemigroup, x) -> bool:
    """x in S^reg = ZS ∩ closed cone."""
    x = tuple(int(c) for c in (x if isinstance(x, (tuple, list)) else (x,)))
    return S.in_group(x) and S.in_cone(x)


def gordan_gap(S: DiscreteSemigroup, box) -> frozenset[IntVec]:
    """(S^reg \\ S) ∩ box."""
    return frozenset(S.regularization_in_box(box) - S.members_in_box(box))


@dataclass(frozen=True)
class GapStabilization:
    sizes: tuple[int, ...]
    gaps: tuple[frozenset[IntVec], ...]

    @property
    def stable(self) -> bool:
        return len(self.gaps) >= 2 and self.gaps[-1] == self.gaps[-2]


def gap_stabilization(S: DiscreteSemigroup, sizes: Iterable[int]) -> GapStabilization:
    """Gap sets in the boxes [0, s]^n for growing s."""
    sizes = tuple(sorted(sizes))
    return GapStabilization(sizes, tuple(gordan_gap(S, s) for s in sizes))


# --------------------------------------------------------------------------
# subadditive functions


@dataclass
class SubadditiveFunction:
    """f: S -> Q with f(u+v) <= f(u) + f(v); the caller asserts this and spot_check samples it."""

    evaluator: Callable[[IntVec], Fraction]
    name: str = "f"
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, u) -> Fraction:
        u = tuple(u)
        if u not in self._cache:
            self._cache[u] = as_fraction(self.evaluator(u))
        return self._cache[u]

    def spot_check(self, points: Sequence[IntVec], pairs: int = 200, seed: int = 0) -> int:
        """Test random pairs from ``points``; raises SubadditivityViolation on failure."""
        rng = random.Random(seed)
        pts = list(points)
        for _ in range(pairs):
            u, v = rng.choice(pts), rng.choice(pts)
            uv = tuple(a + b for a, b in zip(u, v))
            fu, fv, fuv = self(u), self(v), self(uv)
            if fuv > fu + fv:
                raise SubadditivityViolation(u, v, fu, fv, fuv)
        return pairs


def linear_function(weights) -> SubadditiveFunction:
    w = tuple(as_fraction(x) for x in weights)
    return SubadditiveFunction(lambda u: _dot(w, u), "linear")


def ceil_sqrt(n: int) -> int:
    return 0 if n <= 0 else isqrt(n - 1) + 1


def ceil_norm() -> SubadditiveFunction:
    """u -> ceil of the Euclidean length."""
    return SubadditiveFunction(lambda u: Fraction(ceil_sqrt(sum(c * c for c in u))), "ceil-norm")


def ceil_multiple(r) -> SubadditiveFunction:
    """k -> ceil(r k) on N."""
    r = as_fraction(r)
    return SubadditiveFunction(lambda u: Fraction(ceil(r * u[0])), "ceil-multiple")


FUNCTION_LIBRARY = {"linear": linear_function, "ceil-norm": ceil_norm, "ceil-multiple": ceil_multiple}


def floor_multiple(r) -> Callable[[int], Fraction]:
    """The superadditive sequence k -> floor(r k)."""
    r = as_fraction(r)
    return lambda k: Fraction(floor(r * k))


SEQUENCE_LIBRARY = {
    "floor-multiple": (floor_multiple, "super"),
    "square": (lambda: (lambda k: Fraction(k * k)), "super"),
    "sqrt-excess": (lambda: (lambda k: Fraction(k + ceil_sqrt(k))), "sub"),
}


@dataclass(frozen=True)
class HatfEstimate:
    estimate: Fraction
    bracket: tuple[Fraction, Fraction]
    values: tuple[Fraction, ...]

    @property
    def width(self) -> Fraction:
        return self.bracket[1] - self.bracket[0]


def ray_schedule(x, steps: int) -> list[tuple[Fraction, IntVec]]:
    """(1/k, k*x) for k = 1..steps, scaled so k*x is integral."""
    x = tuple(as_fraction(c) for c in x)
    den = lcm(*(c.denominator for c in x))
    return [(Fraction(1, k * den), tuple(int(c * k * den) for c in x)) for k in range(1, steps + 1)]


def hatf_estimate(S: DiscreteSemigroup, f: SubadditiveFunction, x, schedule) -> HatfEstimate:
    """Tail of eps_k f(u_k) along a schedule with eps_k u_k -> x.

    The bracket is the range of the values over the second half of the schedule.
    """
    x = tuple(as_fraction(c) for c in x)
    if not S.in_cone_interior(x):
        raise ValueError(f"{x} is not in the interior of the cone of S")
    values = []
    for eps, u in schedule:
        eps = as_fraction(eps)
        if eps <= 0:
            raise ValueError("schedule weights must be positive")
        if not S.in_cone_interior(u):
            raise ValueError(f"schedule point {u} leaves the interior of the cone")
        values.append(eps * f(u))
    if not values:
        raise ValueError("empty schedule")
    tail = values[len(values) // 2:]
    return HatfEstimate(values[-1], (min(tail), max(tail)), tuple(values))


# --------------------------------------------------------------------------
# Fekete limits


@dataclass(frozen=True)
class FeketeResult:
    """One-sided certified bound and extrapolated estimate for lim a_k / k."""

    bound: Fraction
    estimate: Fraction
    linear: bool
    orientation: str
    ratios: tuple[Fraction, ...]


def fekete_limit(a: Callable[[int], Fraction], orientation: str, K: int, check: bool = True) -> FeketeResult:
    """sup a_k/k (superadditive, a lower bound) or inf a_k/k (subadditive, an upper bound).

    The estimate is the Richardson step 2 r(2m) - r(m) with m = K // 2.
    ``linear`` is False when r_K and r_{K/2} differ by more than a quarter of
    max(|r_{K/2}|, 1), which is how quadratic growth shows up.
    """
    if orientation not in ("super", "sub"):
        raise ValueError("orientation must be 'super' or 'sub'")
    if K < 2:
        raise ValueError("K must be at least 2")
    sign = 1 if orientation == "sub" else -1
    vals = [None] + [sign * as_fraction(a(k)) for k in range(1, K + 1)]
    if check:
        for i in range(1, K):
            for j in range(i, K + 1 - i):
                if vals[i + j] > vals[i] + vals[j]:
                    raise OrientationError(
                        f"a_{i + j} = {sign * vals[i + j]} violates {orientation}additivity with a_{i}, a_{j}")
    ratios = [v / k for k, v in enumerate(vals) if k]
    m = K // 2
    bound = min(ratios)
    estimate = 2 * ratios[2 * m - 1] - ratios[m - 1]
    linear = abs(ratios[-1] - ratios[m - 1]) <= max(abs(ratios[m - 1]), 1) / 4
    return FeketeResult(sign * bound, sign * estimate, linear, orientation,
                        tuple(sign * r for r in ratios))
