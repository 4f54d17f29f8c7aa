"""Rewrite the CLI golden files under tests/golden/.

Run only after checking by hand that a changed output is correct.
"""
from pathlib import Path

from okounkov.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

CASES = {
    "body_p2-deg2.json": ["body", "--scenario", "p2-deg2"],
    "body_blowup1.json": ["body", "--scenario", "blowup1"],
    "body_blowup2-generic.json": ["body", "--scenario", "blowup2-generic"],
    "body_blowup2-collinear.json": ["body", "--scenario", "blowup2-collinear"],
    "function_p2-ordP0.json": ["function", "--scenario", "p2-ordP0", "--t-denominator-bound", "6"],
    "function_p1-curve.json": ["function", "--scenario", "p1-curve"],
    "integral_blowup1-family.csv": ["integral", "--scenario", "blowup1-family"],
    "jumps_p2-ordP0.json": ["jumps", "--scenario", "p2-ordP0"],
    "boundary_disk-demo.json": ["boundary", "--scenario", "disk-demo"],
    "boundary_square-control.json": ["boundary", "--scenario", "square-control"],
    "semigroup_semigroup-gap.json": ["semigroup", "--scenario", "semigroup-gap"],
    "fekete_fekete-demo.json": ["fekete", "--scenario", "fekete-demo"],
}


def regenerate() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        status = main(argv + ["--out", str(GOLDEN / name)])
        print(f"{name}: exit {status}")


if __name__ == "__main__":
    regenerate()
