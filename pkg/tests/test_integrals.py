from fractions import Fraction as F

import pytest
import sympy as sp

from okounkov.geometry import integrate
from okounkov.integrals import (FAMILY_VALUATIONS, blowup_family, check_integral_homogeneity, closed_form_phi,
                                cubic, family_scan, integral, mass_sequence)
from okounkov.series import P0, P1_DEFAULT, ValuationSpec, family
from oracles import blowup_integral_symbolic, lam_

GRID = [F(0), F(1, 4), F(1, 2), F(3, 4)]


@pytest.mark.parametrize("kind", ["P0", "P2"])
def test_symbolic_integral_is_the_cubic(kind):
    got = blowup_integral_symbolic(kind)
    assert sp.expand(got - (sp.Rational(1, 3) - lam_**2 / 2 + lam_**3 / 6)) == 0


@pytest.mark.parametrize("kind", ["P0", "P2"])
@pytest.mark.parametrize("lam", GRID + [F(1, 3), F(9, 10)])
def test_closed_form_integrals(kind, lam):
    want = F(str(blowup_integral_symbolic(kind).subs(lam_, sp.Rational(lam.numerator, lam.denominator))))
    assert integrate(closed_form_phi(kind, lam)) == want == cubic(lam)


def test_cubic_values_on_the_grid():
    assert [cubic(x) for x in GRID] == [F(1, 3), F(39, 128), F(11, 48), F(47, 384)]


def test_family_scan_flags_non_big_values():
    entries = family_scan([F(1, 2), F(1), F(5, 4), F(-1)])
    assert not entries[0].flagged and entries[0].exact["P2"] == F(11, 48)
    assert all(e.flagged for e in entries[1:])
    with pytest.raises(ValueError):
        closed_form_phi("P2", 1)
    with pytest.raises(ValueError):
        closed_form_phi("nope", F(1, 2))


def test_family_scan_with_truncation():
    for e in family_scan(GRID, K=8):
        assert not e.flagged
        for kind, rep in e.truncated.items():
            assert abs(rep.integral - cubic(e.lam)) <= F(1, 8)
            assert rep.integral <= cubic(e.lam)


def test_family_scan_flags_bad_budget():
    (e,) = family_scan([F(1, 3)], K=4)
    assert e.flagged


def test_integral_report():
    rep = integral(family("P2", 1), ValuationSpec.at_point(P0), 3)
    assert rep.integral == F(1, 3) and rep.body_volume == F(1, 2) and rep.normalized == F(2, 3)
    assert [k for k, _ in rep.mass_sequence] == [1, 2, 3]


def test_mass_ratio_decreases_toward_the_integral():
    seq = mass_sequence(family("P2", 1), ValuationSpec.at_point(P1_DEFAULT), range(1, 9))
    ratios = [r for _, r in seq]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert all(r > F(1, 3) for r in ratios)
    assert ratios[-1] - F(1, 3) < F(1, 6)


def test_integral_is_flag_independent():
    base = integral(family("P2", 1), ValuationSpec.at_point(P1_DEFAULT), 3).integral
    other = integral(family("P2", 1, flag=(1, 0)), ValuationSpec.at_point(P1_DEFAULT), 3).integral
    assert base == other == F(1, 3)


@pytest.mark.parametrize("m", [2, 3])
def test_integral_homogeneity(m):
    assert check_integral_homogeneity(family("P2", 1), ValuationSpec.at_point(P0), m, 2).ok
    with pytest.raises(ValueError):
        check_integral_homogeneity(family("P2", 1), ValuationSpec.at_point(P0), 0, 2)


def test_blowup_family_switches_model():
    assert blowup_family(0).geometry.model == "P2"
    assert blowup_family(F(1, 2)).step == 2
    assert set(FAMILY_VALUATIONS) == {"P0", "P2"}
