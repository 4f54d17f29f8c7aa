"""Filtrations induced by valuations: jumping numbers, mass and their asymptotics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .semigroup import FeketeResult, fekete_limit
from .series import LinearSeries, SeriesFamily, ValuationSpec, filtration_steps


@dataclass(frozen=True)
class JumpingProfile:
    """Jumping numbers e_1 >= ... >= e_dim, with dims[t] = dim F_t for t = 0, 1, ..."""

    jumps: tuple[int, ...]
    dims: tuple[int, ...]

    @property
    def mass(self) -> Fraction:
        return Fraction(sum(self.jumps))

    @property
    def emax(self) -> int:
        return self.jumps[0]

    @property
    def emin(self) -> int:
        return self.jumps[-1]


def filtration_dims(V: LinearSeries, val: ValuationSpec) -> tuple[int, ...]:
    """dim F_t V for t = 0, 1, ... ending with the first 0."""
    return tuple(d for d, _ in filtration_steps(V, val))


def jumping_numbers(V: LinearSeries, val: ValuationSpec) -> JumpingProfile:
    dims = filtration_dims(V, val)
    if dims[0] == 0:
        raise ValueError("the linear series is zero")
    # e_j = max{t : dim F_t >= j}
    jumps = tuple(max(t for t, d in enumerate(dims) if d >= j) for j in range(1, dims[0] + 1))
    return JumpingProfile(jumps, dims)


def mass(V: LinearSeries, val: ValuationSpec) -> Fraction:
    # sum of e_j equals sum over t >= 1 of dim F_t
    return Fraction(sum(filtration_dims(V, val)[1:]))


def _level_sequence(F: SeriesFamily, val: ValuationSpec, K: int, pick) -> tuple[int, list[Fraction]]:
    step = F.step
    n = K // step
    if n < 1:
        raise ValueError(f"no integral levels up to {K}")
    seq = []
    for j in range(1, n + 1):
        V = F.level(j * step)
        if V.dim == 0:
            raise ValueError(f"V_{j * step} is zero")
        seq.append(Fraction(pick(jumping_numbers(V, val))))
    return step, seq


def _asymptotic(F, val, K, pick, orientation) -> FeketeResult:
    step, seq = _level_sequence(F, val, K, pick)
    if len(seq) < 2:
        v = seq[0] / step
        return FeketeResult(v, v, True, orientation, (v,))
    r = fekete_limit(lambda j: seq[j - 1], orientation, len(seq))
    # indices count multiples of the step
    return FeketeResult(r.bound / step, r.estimate / step, r.linear, orientation,
                        tuple(x / step for x in r.ratios))


def emax_asymptotic(F: SeriesFamily, val: ValuationSpec, K: int) -> FeketeResult:
    """sup_k e_max(V_k)/k, a certified lower bound for the limit, and an estimate."""
    return _asymptotic(F, val, K, lambda p: p.emax, "super")


def emin_asymptotic(F: SeriesFamily, val: ValuationSpec, K: int) -> FeketeResult:
    """inf_k e_min(V_k)/k, a certified upper bound for the asymptotic order nu(||D||)."""
    return _asymptotic(F, val, K, lambda p: p.emin, "sub")
