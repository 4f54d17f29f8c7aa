"""Level-truncated Okounkov bodies and their t-slices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable

from .exact import as_fraction
from .flag import achievable_vectors, normalized_points
from .geometry import Point, Polytope, convex_hull
from .series import SeriesFamily, ValuationSpec, filtration_steps


@dataclass(frozen=True)
class OkounkovBodyApprox:
    """Convex hull of the valuation vectors seen up to level ``max_level``.

    This is an inner approximation.  ``exact`` is only set by
    :meth:`certify`, which compares against a known polygon.
    """

    body: Polytope
    max_level: int
    exact: bool = False

    def certify(self, expected: Iterable) -> "OkounkovBodyApprox":
        ok = self.body.vertex_set() == convex_hull(expected, self.body.dim).vertex_set()
        return OkounkovBodyApprox(self.body, self.max_level, ok)

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self.body.vertices


def okounkov_body(F: SeriesFamily, K: int) -> OkounkovBodyApprox:
    pts = normalized_points(F, K)
    if not pts:
        raise ValueError(f"no nonzero sections at levels up to {K}")
    return OkounkovBodyApprox(convex_hull(pts, F.dim), K)


def slice_points(F: SeriesFamily, val: ValuationSpec, t, K: int) -> set[Point]:
    """Normalized flag vectors of F_{ceil(tk)} V_k for k <= K."""
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    out = set()
    for V in F.levels(K):
        k = V.level
        steps = filtration_steps(V, val)
        need = ceil(t * k)
        if need >= len(steps):
            continue
        vecs = V.flag_vectors
        for c in sorted(steps[need][1]):
            out.add(tuple(Fraction(x, k) for x in vecs[c]))
    return out


def slice_body(F: SeriesFamily, val: ValuationSpec, t, K: int) -> OkounkovBodyApprox | None:
    """Body of k -> F_{ceil(tk)} V_k, or None when every level up to K is zero."""
    pts = slice_points(F, val, t, K)
    if not pts:
        return None
    return OkounkovBodyApprox(convex_hull(pts, F.dim), K)


def level_vectors(F: SeriesFamily, k: int) -> list[tuple[int, ...]]:
    return achievable_vectors(F.level(k))
