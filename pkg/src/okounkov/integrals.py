"""The invariant I(D; nu): integrals of Okounkov functions and mass asymptotics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import as_fraction
from .filtration import mass
from .function import okounkov_function_envelope
from .geometry import ConcavePL, convex_hull, envelope_from_values, integrate
from .series import P0, P1_DEFAULT, P2_GENERIC, SeriesFamily, ValuationSpec, family


@dataclass(frozen=True)
class IntegralReport:
    integral: Fraction
    body_volume: Fraction
    mass_sequence: tuple[tuple[int, Fraction], ...]
    max_level: int

    @property
    def normalized(self) -> Fraction:
        return self.integral / self.body_volume if self.body_volume else Fraction(0)


def mass_sequence(F: SeriesFamily, val: ValuationSpec, levels: Iterable[int]) -> tuple[tuple[int, Fraction], ...]:
    """(k, mass(V_k) / k^(n+1)) for the given levels."""
    n = F.dim
    return tuple((k, mass(F.level(k), val) / k ** (n + 1)) for k in levels if F.has_level(k))


def integral(F: SeriesFamily, val: ValuationSpec, K: int, mass_levels: Iterable[int] | None = None) -> IntegralReport:
    phi = okounkov_function_envelope(F, val, K)
    levels = range(F.step, K + 1, F.step) if mass_levels is None else mass_levels
    return IntegralReport(integrate(phi), phi.domain.volume(), mass_sequence(F, val, levels), K)


@dataclass(frozen=True)
class HomogeneityCheck:
    m: int
    scaled: Fraction
    expected: Fraction

    @property
    def ok(self) -> bool:
        return self.scaled == self.expected


def check_integral_homogeneity(F: SeriesFamily, val: ValuationSpec, m: int, K: int) -> HomogeneityCheck:
    """I(mD) against m^(n+1) I(D), both from envelopes at budget K."""
    if m < 1:
        raise ValueError("m must be positive")
    base = integral(F, val, K, mass_levels=()).integral
    scaled = integral(F.veronese(m), val, K, mass_levels=()).integral
    return HomogeneityCheck(m, scaled, m ** (F.dim + 1) * base)


# --------------------------------------------------------------------------
# the one-point blow-up family D_lambda = H - lambda E_1


def cubic(lam) -> Fraction:
    lam = as_fraction(lam)
    return Fraction(1, 3) - lam**2 / 2 + lam**3 / 6


def blowup_family(lam) -> SeriesFamily:
    lam = as_fraction(lam)
    if lam == 0:
        return family("P2", 1)
    return family("BlowupP2", 1, [P1_DEFAULT], [lam])


def blowup_body_vertices(lam) -> list[tuple[Fraction, Fraction]]:
    lam = as_fraction(lam)
    return [(Fraction(0), Fraction(0)), (1 - lam, Fraction(0)), (1 - lam, lam), (Fraction(0), Fraction(1))]


def closed_form_phi(kind: str, lam, scale=1) -> ConcavePL:
    """The known Okounkov functions on the body of scale * D_lambda.

    ``"P0"``: a + b (order at the flag point).
    ``"P2"``: min(1 - a, 2 - 2a - b - lambda) (order at a general point).
    Scaling uses phi_{mD}(m x) = m phi_D(x).
    """
    lam, m = as_fraction(lam), as_fraction(scale)
    if not 0 <= lam < 1:
        raise ValueError("lambda must lie in [0, 1)")
    verts = blowup_body_vertices(lam)
    if kind == "P0":
        values = {v: v[0] + v[1] for v in verts}
    elif kind == "P2":
        pts = verts + [(Fraction(0), 1 - lam)]
        values = {v: min(1 - v[0], 2 - 2 * v[0] - v[1] - lam) for v in pts}
    else:
        raise ValueError(f"unknown closed form {kind!r}")
    values = {(m * v[0], m * v[1]): m * z for v, z in values.items()}
    return envelope_from_values(convex_hull(values, 2), values)


FAMILY_VALUATIONS = {"P0": ValuationSpec.at_point(P0), "P2": ValuationSpec.at_point(P2_GENERIC)}


@dataclass(frozen=True)
class ScanEntry:
    lam: Fraction
    exact: dict | None = None
    truncated: dict | None = None
    flag: str | None = None

    @property
    def flagged(self) -> bool:
        return self.flag is not None


def family_scan(lambda_grid: Iterable, K: int | None = None, kinds=("P0", "P2")) -> list[ScanEntry]:
    """Closed-form integrals (and truncated ones at budget K) along the lambda grid.

    Entries outside the bigness window [0, 1) are flagged, not computed.
    """
    out = []
    for lam in lambda_grid:
        lam = as_fraction(lam)
        if not 0 <= lam < 1:
            out.append(ScanEntry(lam, flag="not big: lambda must lie in [0, 1)"))
            continue
        exact = {k: integrate(closed_form_phi(k, lam)) for k in kinds}
        trunc = None
        if K is not None:
            F = blowup_family(lam)
            if K % F.step:
                out.append(ScanEntry(lam, exact, flag=f"level {K} does not clear the denominator of lambda"))
                continue
            trunc = {k: integral(F, FAMILY_VALUATIONS[k], K, mass_levels=()) for k in kinds}
        out.append(ScanEntry(lam, exact, trunc))
    return out
