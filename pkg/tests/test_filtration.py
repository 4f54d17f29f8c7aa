from fractions import Fraction as F

import pytest

from okounkov.filtration import emax_asymptotic, emin_asymptotic, filtration_dims, jumping_numbers, mass
from okounkov.series import CURVE_P, CURVE_Q, P0, P1_DEFAULT, ValuationSpec, family
from oracles import dim_forms


def test_jumps_on_lines():
    prof = jumping_numbers(family("P2", 1).level(1), ValuationSpec.at_point(P0))
    assert prof.jumps == (1, 1, 0) and prof.mass == 2
    assert prof.emax == 1 and prof.emin == 0


def test_jumps_on_the_projective_line():
    prof = jumping_numbers(family("P1", 1).level(1), ValuationSpec.at_point(CURVE_P))
    assert prof.jumps == (1, 0) and prof.mass == 1


def test_jumps_on_conics():
    V = family("P2", 2).level(1)
    val = ValuationSpec.at_point(P0)
    assert filtration_dims(V, val) == (6, 5, 3, 0)
    prof = jumping_numbers(V, val)
    assert prof.jumps == (2, 2, 2, 1, 1, 0) and prof.mass == 8


@pytest.mark.parametrize("deg", [1, 2, 3, 4])
@pytest.mark.parametrize("point", [P0, P1_DEFAULT, (1, 2, 3)])
def test_filtration_dims_match_symbolic_rank(deg, point):
    V = family("P2", deg).level(1)
    dims = filtration_dims(V, ValuationSpec.at_point(point))
    for t, d in enumerate(dims):
        assert d == dim_forms(3, deg, [(point, t)])


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_mass_of_point_valuation_is_closed_form(k):
    # dim F_t = dim of degree-k forms minus t(t+1)/2 conditions, so mass = k(k+1)(k+2)/3
    V = family("P2", 1).level(k)
    assert mass(V, ValuationSpec.at_point(P1_DEFAULT)) == F(k * (k + 1) * (k + 2), 3)


def test_zero_series_is_rejected():
    V = family("BlowupP2", 1, [P1_DEFAULT], [2]).level(1)
    with pytest.raises(ValueError):
        jumping_numbers(V, ValuationSpec.at_point(P0))


@pytest.mark.parametrize("fam,val,K,want", [
    (family("P2", 1), ValuationSpec.at_point(P1_DEFAULT), 8, 1),
    (family("P2", 1), ValuationSpec.along_curve({(1, 0, 0): 1}), 8, 1),
    (family("P1", 2), ValuationSpec.at_point(CURVE_Q), 8, 2),
])
def test_emax_asymptotic(fam, val, K, want):
    r = emax_asymptotic(fam, val, K)
    assert r.bound == want and r.estimate == want and r.orientation == "super"


@pytest.mark.parametrize("fam,val", [
    (family("P2", 1), ValuationSpec.at_point(P0)),
    (family("BlowupP2", 1, [P1_DEFAULT], [F(1, 2)]), ValuationSpec.along_exceptional(0)),
    (family("P1", 1), ValuationSpec.at_point(CURVE_P)),
])
def test_emin_asymptotic(fam, val):
    r = emin_asymptotic(fam, val, 6)
    assert r.bound == 0 and r.estimate == 0


def test_asymptotics_need_a_level():
    with pytest.raises(ValueError):
        emax_asymptotic(family("BlowupP2", 1, [P1_DEFAULT], [F(1, 2)]), ValuationSpec.at_point(P0), 1)


def test_veronese_scales_jumps():
    fam = family("BlowupP2", 2, [P1_DEFAULT], [1])
    val = ValuationSpec.at_point(P0)
    a = emax_asymptotic(fam, val, 6).bound
    b = emax_asymptotic(fam.veronese(2), val, 3).bound
    assert b == 2 * a


def test_linear_boundedness():
    fam = family("P2", 1)
    for val in [ValuationSpec.at_point(P0), ValuationSpec.at_point(P1_DEFAULT)]:
        for k in range(1, 7):
            assert jumping_numbers(fam.level(k), val).emax <= k
