"""Recompute the worked examples: bodies, functions, jumps, the integral family and the boundary demo."""
from fractions import Fraction

from okounkov.body import okounkov_body
from okounkov.boundary import discontinuity_witness
from okounkov.filtration import emax_asymptotic, jumping_numbers
from okounkov.function import okounkov_function_envelope
from okounkov.geometry import disk_cap
from okounkov.integrals import family_scan
from okounkov.scenarios import builtin
from okounkov.semigroup import DiscreteSemigroup, gordan_gap
from okounkov.series import P0, P1_DEFAULT, ValuationSpec, family


def show_function(phi) -> None:
    for fc in phi.facets:
        grad = ", ".join(str(c) for c in fc.gradient)
        print(f"    grad ({grad}) + {fc.constant} on {sorted(tuple(map(str, v)) for v in fc.cell)}")


def main() -> None:
    print("bodies")
    for name in ("p2-deg2", "blowup1", "blowup2-generic", "blowup2-collinear"):
        sc = builtin(name)
        body = okounkov_body(sc.series, sc.max_level).body
        print(f"  {name:18s} K={sc.max_level}: {sorted(tuple(map(str, v)) for v in body.vertices)}")

    print("functions")
    for name in ("p2-ordP0", "p2-ordP1", "p1-curve", "p1-curve-p"):
        sc = builtin(name)
        print(f"  {name}")
        show_function(okounkov_function_envelope(sc.series, sc.valuation, sc.max_level))
    lam = Fraction(1, 2)
    print("  blow-up H - E/2, order at [1:1:1], K=8")
    show_function(okounkov_function_envelope(family("BlowupP2", 1, [P1_DEFAULT], [lam]),
                                             builtin("blowup1").valuation, 8))

    print("jumping numbers")
    for deg in (1, 2, 3):
        prof = jumping_numbers(family("P2", deg).level(1), ValuationSpec.at_point(P0))
        print(f"  O({deg}) at [0:0:1]: {prof.jumps} mass {prof.mass}")
    r = emax_asymptotic(family("P2", 1), ValuationSpec.at_point(P1_DEFAULT), 8)
    print(f"  e_max asymptotic at [1:0:0]: bound {r.bound} estimate {r.estimate}")

    print("integral family")
    for e in family_scan([0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)], K=8):
        print(f"  lambda={e.lam}: exact {e.exact['P2']}, envelope at K=8 {e.truncated['P2'].integral}")

    print("boundary")
    rep = discontinuity_witness(disk_cap(), (0, 2), 10)
    print(f"  h(p)={rep.center_value}, probe values {[str(v) for v in rep.values]}, certified {rep.certified}")

    print("semigroups")
    for gens in ((2, 3), (3, 5), (4, 6, 9)):
        print(f"  <{', '.join(map(str, gens))}> gap {sorted(g[0] for g in gordan_gap(DiscreteSemigroup.of(*gens), 30))}")


if __name__ == "__main__":
    main()
