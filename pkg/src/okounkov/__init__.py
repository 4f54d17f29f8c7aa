"""Exact Newton-Okounkov bodies and Okounkov functions on P^1, P^2 and blow-ups of P^2."""
from .body import OkounkovBodyApprox, okounkov_body, slice_body
from .filtration import JumpingProfile, emax_asymptotic, emin_asymptotic, jumping_numbers
from .flag import FlagVector, LevelSemigroup, flag_valuation, level_semigroup, valuation_points
from .function import (check_homogeneity, check_reduction, okounkov_function_envelope,
                       okounkov_function_slices, phi_sample)
from .geometry import ConcavePL, Polytope, concave_envelope, convex_hull, homothety_sup, integrate
from .integrals import IntegralReport, check_integral_homogeneity, family_scan, integral
from .series import (DivisorClass, GeometrySpec, LinearSeries, SeriesFamily, ValuationSpec, build_series,
                     family, subspace_with_vanishing)

__version__ = "0.1.0"
