"""Flag valuations, valuation vectors and level semigroups."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .exact import as_fraction
from .series import LinearSeries, Poly, SeriesFamily, leading_vector


@dataclass(frozen=True, order=True)
class FlagVector:
    entries: tuple[int, ...]
    level: int

    @property
    def normalized(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(e, self.level) for e in self.entries)


def flag_valuation(s: Poly, V: LinearSeries) -> FlagVector:
    """nu_Y(s): lexicographic minimum of the flag exponents over the support of s."""
    if not s or all(c == 0 for c in s.values()):
        raise ValueError("the zero section has no flag valuation")
    if not V.contains(s):
        raise ValueError("section does not belong to the linear series")
    return FlagVector(leading_vector({e: c for e, c in s.items() if c != 0}, V.geometry.flag), V.level)


def achievable_vectors(V: LinearSeries) -> list[tuple[int, ...]]:
    """nu_Y(V_k \\ 0), sorted lexicographically."""
    vecs = V.flag_vectors
    return [vecs[c] for c in V.echelon.free_columns()]


def valuation_points(F: SeriesFamily, K: int) -> set[tuple[tuple[Fraction, ...], int]]:
    """{(nu(s)/k, k)} over all levels k <= K with integral data."""
    if K < 1:
        raise ValueError("K must be at least 1")
    out = set()
    for V in F.levels(K):
        k = V.level
        for v in achievable_vectors(V):
            out.add((tuple(Fraction(x, k) for x in v), k))
    return out


def normalized_points(F: SeriesFamily, K: int) -> set[tuple[Fraction, ...]]:
    return {v for v, _ in valuation_points(F, K)}


@dataclass(frozen=True)
class LevelSemigroup:
    """S_v = {k : kv is the valuation vector of some section of V_k}, truncated at K.

    ``exponent`` is the eventual period: the gcd of the members, reported
    as ``stable`` only when every multiple of it from some point on up to K
    is a member and that tail is at least as long as the largest gap.
    """

    v: tuple[Fraction, ...]
    members: frozenset[int]
    max_level: int
    exponent: int
    largest_gap: int
    stable: bool


def level_semigroup(F: SeriesFamily, v: Iterable, K: int) -> LevelSemigroup:
    v = tuple(as_fraction(x) for x in v)
    if len(v) != F.dim:
        raise ValueError(f"expected a vector of length {F.dim}")
    den = lcm(*(x.denominator for x in v))
    members = set()
    for V in F.levels(K):
        k = V.level
        if k % den:
            continue
        target = tuple(int(x * k) for x in v)
        if target in set(achievable_vectors(V)):
            members.add(k)
    exponent = 0
    for k in members:
        exponent = gcd(exponent, k)
    largest_gap, stable = 0, False
    if members:
        mults = list(range(exponent, K + 1, exponent))
        missing = [k for k in mults if k not in members]
        largest_gap = missing[-1] if missing else 0
        tail = K - largest_gap
        stable = tail >= max(largest_gap, exponent)
    return LevelSemigroup(v, frozenset(members), K, exponent, largest_gap, stable)
