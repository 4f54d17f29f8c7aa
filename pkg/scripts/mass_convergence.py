"""Mass of the point filtration on lines through [1:0:0], against its limit 1/3.

Prints k, mass(V_k)/k^3, the error, 1/k and the closed-form error 1/k + 2/(3k^2).
"""
import argparse
from fractions import Fraction

from okounkov.filtration import mass
from okounkov.series import P1_DEFAULT, ValuationSpec, family


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--from", dest="lo", type=int, default=1)
    ap.add_argument("--to", dest="hi", type=int, default=30)
    args = ap.parse_args()
    fam, val = family("P2", 1), ValuationSpec.at_point(P1_DEFAULT)
    print("k,ratio,error,one_over_k,closed_form_error")
    for k in range(args.lo, args.hi + 1):
        r = mass(fam.level(k), val) / k**3
        err = r - Fraction(1, 3)
        print(f"{k},{r},{float(err):.6f},{1 / k:.6f},{float(Fraction(1, k) + Fraction(2, 3 * k * k)):.6f}")


if __name__ == "__main__":
    main()
