"""Randomized invariant checks shared by the hypothesis suite and the acceptance run.

Every checker takes a ``random.Random`` and raises AssertionError on failure.
"""
from __future__ import annotations

import random
from fractions import Fraction

from okounkov.function import level_samples
from okounkov.geometry import concave_envelope, convex_hull
from okounkov.series import (P0, P1_DEFAULT, P2_GENERIC, ValuationSpec, family, poly_mul, proj_point,
                             subspace_with_vanishing)

FAMILIES = [
    family("P2", 1),
    family("P2", 2),
    family("BlowupP2", 1, [P1_DEFAULT], [Fraction(1, 2)]),
    family("BlowupP2", 2, [P1_DEFAULT], [1]),
    family("BlowupP2", 2, [P1_DEFAULT, P2_GENERIC], [1, 1]),
    family("P1", 1),
    family("P1", 2),
]

PLANE_VALUATIONS = [
    ValuationSpec.at_point(P0),
    ValuationSpec.at_point(P2_GENERIC),
    ValuationSpec.at_point(proj_point(2, -1, 3)),
    ValuationSpec.along_curve({(1, 0, 0): 1}),
    ValuationSpec.along_curve({(0, 1, 0): 1, (0, 0, 1): -1}),
]
LINE_VALUATIONS = [ValuationSpec.at_point(0, 1), ValuationSpec.at_point(1, 1), ValuationSpec.at_point(1, 3)]


def _pick(rng: random.Random):
    fam = rng.choice(FAMILIES)
    vals = LINE_VALUATIONS if fam.geometry.model == "P1" else PLANE_VALUATIONS
    return fam, rng.choice(vals)


def _level(rng, fam, top):
    return fam.step * rng.randint(1, max(1, top // fam.step))


def _combo(rng, basis):
    if not basis:
        return None
    v = [Fraction(0)] * len(basis[0])
    while not any(v):
        for b in basis:
            c = rng.randint(-3, 3)
            v = [x + c * y for x, y in zip(v, b)]
    return v


def check_filtration_axioms(rng: random.Random) -> None:
    fam, val = _pick(rng)
    V = fam.level(_level(rng, fam, 3))
    dims = []
    t = 0
    while True:
        basis = subspace_with_vanishing(V, val, t)
        dims.append(len(basis))
        if not basis:
            break
        s = V.to_poly(_combo(rng, basis))
        assert V.contains(s)
        assert val.value(s, V) >= t
        t += 1
    assert dims[0] == V.dim, "F_0 is the whole space"
    assert dims[-1] == 0, "bounded above"
    assert all(a >= b for a, b in zip(dims, dims[1:])), "non-increasing"
    # integer jumps: a real t behaves like its ceiling
    real_t = Fraction(rng.randint(1, 4 * len(dims)), 4)
    ceil_t = -(-real_t.numerator // real_t.denominator)
    if ceil_t < len(dims):
        assert len(subspace_with_vanishing(V, val, ceil_t)) == dims[ceil_t]


def check_multiplicativity(rng: random.Random) -> None:
    fam, val = _pick(rng)
    m, n = _level(rng, fam, 2), _level(rng, fam, 2)
    Vm, Vn, Vmn = fam.level(m), fam.level(n), fam.level(m + n)
    t, u = rng.randint(0, Vm.degree), rng.randint(0, Vn.degree)
    a, b = subspace_with_vanishing(Vm, val, t), subspace_with_vanishing(Vn, val, u)
    if not a or not b:
        return
    s, r = Vm.to_poly(_combo(rng, a)), Vn.to_poly(_combo(rng, b))
    prod = poly_mul(s, r)
    assert Vmn.contains(prod), "product leaves V_{m+n}"
    assert val.value(prod, Vmn) >= t + u, "product leaves F_{t+u}"


def check_sample_superadditivity(rng: random.Random) -> None:
    fam, val = _pick(rng)
    k, l = _level(rng, fam, 3), _level(rng, fam, 3)
    sk, sl = level_samples(fam.level(k), val), level_samples(fam.level(l), val)
    skl = level_samples(fam.level(k + l), val)
    v1, v2 = rng.choice(sorted(sk)), rng.choice(sorted(sl))
    # the product of the two witnesses realises the weighted point at level k + l
    w = tuple((k * a + l * b) / (k + l) for a, b in zip(v1, v2))
    assert w in skl, "weighted point not achieved"
    assert (k + l) * skl[w] >= k * sk[v1] + l * sl[v2], "superadditivity fails"


def _rand_points(rng, dim, lo=2, hi=10):
    return [tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(dim))
            for _ in range(rng.randint(lo, hi))]


def check_hull_idempotence(rng: random.Random) -> None:
    dim = rng.choice((1, 2, 2, 3))
    pts = _rand_points(rng, dim)
    H = convex_hull(pts, dim)
    again = convex_hull(H.vertices, dim)
    assert again.vertex_set() == H.vertex_set()
    assert all(H.contains(p) for p in pts)
    assert all(v in {tuple(Fraction(c) for c in p) for p in pts} for v in H.vertices)


def check_envelope_dominates(rng: random.Random) -> None:
    dim = rng.choice((1, 2, 2))
    pts = _rand_points(rng, dim, 3, 9)
    H = convex_hull(pts, dim)
    if H.affine_dim < dim:
        return
    samples = [(p, Fraction(rng.randint(0, 12), rng.randint(1, 4))) for p in pts]
    f = concave_envelope(samples, H)
    for p, v in samples:
        assert f(p) >= v
    # concavity along a random chord
    a, b = rng.choice(pts), rng.choice(pts)
    mid = tuple((x + y) / 2 for x, y in zip(a, b))
    assert f(mid) >= (f(a) + f(b)) / 2


SUITES = {
    "filtration axioms": check_filtration_axioms,
    "multiplicativity containment": check_multiplicativity,
    "midpoint superadditivity of samples": check_sample_superadditivity,
    "hull idempotence": check_hull_idempotence,
    "envelope dominates samples": check_envelope_dominates,
}


def run_suite(check, cases: int, seed: int) -> int:
    """Number of failing cases among ``cases`` seeded draws."""
    failures = 0
    for i in range(cases):
        try:
            check(random.Random(seed * 1_000_003 + i))
        except AssertionError:
            failures += 1
    return failures
