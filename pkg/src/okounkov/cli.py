"""Command-line front end.

Exit status: 0 success, 1 golden mismatch, 2 input error.
"""
from __future__ import annotations

import argparse
import random
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .body import okounkov_body
from .boundary import discontinuity_witness
from .exact import as_fraction, fmt
from .filtration import jumping_numbers
from .function import grid_points, okounkov_function_envelope, okounkov_function_slices
from .geometry import Polytope, concave_envelope, convex_hull
from .integrals import FAMILY_VALUATIONS, blowup_family, cubic, family_scan, integral
from .scenarios import (BUILTINS, Scenario, ScenarioError, body_matches, builtin, load_config, run_fekete,
                        run_golden, same_function)
from .semigroup import DiscreteSemigroup, gordan_gap

OK, MISMATCH, INPUT_ERROR = 0, 1, 2


def _scenario(args) -> Scenario:
    if args.config:
        sc = load_config(args.config)
    elif args.scenario:
        sc = builtin(args.scenario, getattr(args, "lam", None))
    else:
        raise ScenarioError("give --scenario or --config")
    if getattr(args, "max_level", None) is not None:
        if args.max_level < 1:
            raise ScenarioError("--max-level must be positive")
        sc = replace(sc, max_level=args.max_level)
    return sc


def _need(sc: Scenario, kind: str, command: str):
    if sc.kind != kind:
        raise ScenarioError(f"scenario {sc.name!r} cannot be used with {command!r}")


def _levels_or_fail(sc: Scenario):
    if sc.max_level < sc.series.step:
        raise ScenarioError(f"no integral level up to {sc.max_level}: k*d and k*lambda need k divisible by {sc.series.step}")


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _svg(args, text: str):
    if getattr(args, "svg", None):
        Path(args.svg).write_text(text, encoding="utf-8")


def cmd_body(args) -> int:
    sc = _scenario(args)
    _need(sc, "series", "body")
    _levels_or_fail(sc)
    K = sc.max_level
    approx = okounkov_body(sc.series, K)
    payload = {"scenario": sc.name, "max_level": K, "body": ser.polytope_json(approx.body), "exact": False}
    status = OK
    if sc.expected_body is not None and K % sc.golden_level == 0:
        ok, _ = body_matches(sc, K)
        payload["exact"] = ok
        status = OK if ok else MISMATCH
    _emit(args, ser.dumps(payload))
    if approx.body.dim == 2:
        _svg(args, ser.polytope_svg(approx.body))
    return status


def cmd_function(args) -> int:
    sc = _scenario(args)
    _need(sc, "series", "function")
    _levels_or_fail(sc)
    K = sc.max_level
    phi = okounkov_function_envelope(sc.series, sc.valuation, K)
    payload = {"scenario": sc.name, "max_level": K, "valuation": sc.valuation.label,
               "function": ser.function_json(phi)}
    status = OK
    if sc.expected_function is not None:
        ok = same_function(phi, sc.expected_function())
        payload["matches_expected"] = ok
        status = OK if ok else MISMATCH
    if args.t_denominator_bound:
        q = args.t_denominator_bound
        psi = okounkov_function_slices(sc.series, sc.valuation, K, denominator_bound=q)
        dev = max(abs(psi(x) - phi(x)) for x in grid_points(phi.domain, q))
        payload["slices"] = {"denominator_bound": q, "max_deviation": fmt(dev)}
    _emit(args, ser.dumps(payload))
    if phi.domain.dim == 2:
        _svg(args, ser.function_svg(phi))
    return status


def cmd_integral(args) -> int:
    sc = _scenario(args)
    if sc.kind == "scan":
        grid = [as_fraction(x) for x in args.lambda_grid.split(",")] if args.lambda_grid else list(sc.lambda_grid)
        K = sc.max_level
        rows, status = [], OK
        for e in family_scan(grid):
            if e.flagged:
                rows.append([e.lam, "", "", "", "", e.flag])
                continue
            exact = e.exact["P2"]
            if any(v != cubic(e.lam) for v in e.exact.values()):
                status = MISMATCH
            trunc, norm, tail = "", "", ""
            F = blowup_family(e.lam)
            if K % F.step == 0:
                rep = integral(F, FAMILY_VALUATIONS["P2"], K, mass_levels=[K])
                trunc, norm, tail = rep.integral, rep.normalized, rep.mass_sequence[-1][1]
            rows.append([e.lam, exact, norm, trunc, tail, "ok"])
        header = ["lambda", "integral", "normalized", "truncated", "mass_tail", "status"]
        if args.out and args.out.endswith(".json"):
            text = ser.dumps({"scenario": sc.name, "max_level": K,
                              "rows": [dict(zip(header, [ser.num(c) if isinstance(c, Fraction) else c for c in r]))
                                       for r in rows]})
        else:
            text = ser.csv_text(header, rows)
        _emit(args, text)
        return status
    _need(sc, "series", "integral")
    _levels_or_fail(sc)
    K = sc.max_level
    rep = integral(sc.series, sc.valuation, K)
    payload = {"scenario": sc.name, "max_level": K, "valuation": sc.valuation.label,
               "integral": fmt(rep.integral), "normalized": fmt(rep.normalized),
               "body_volume": fmt(rep.body_volume),
               "mass_sequence": [[k, fmt(v)] for k, v in rep.mass_sequence]}
    _emit(args, ser.dumps(payload))
    return OK


def cmd_jumps(args) -> int:
    sc = _scenario(args)
    _need(sc, "series", "jumps")
    k = sc.series.step if args.max_level is None else args.max_level
    if not sc.series.has_level(k):
        raise ScenarioError(f"level {k} does not clear the denominators of the divisor")
    prof = jumping_numbers(sc.series.level(k), sc.valuation)
    payload = {"scenario": sc.name, "level": k, "valuation": sc.valuation.label,
               "dims": list(prof.dims), "jumps": list(prof.jumps), "mass": fmt(prof.mass)}
    status = OK
    if sc.expected_jumps is not None and k == sc.series.step:
        status = OK if prof.jumps == sc.expected_jumps else MISMATCH
    _emit(args, ser.dumps(payload))
    return status


def cmd_boundary(args) -> int:
    sc = _scenario(args)
    _need(sc, "boundary", "boundary")
    n = args.probes or 10
    rep = discontinuity_witness(sc.body, sc.center, n)
    payload = {"scenario": sc.name, "center": ser.vec(rep.center), "kind": rep.kind,
               "locally_cone": rep.locally_cone, "center_value": fmt(rep.center_value),
               "probes": [{"point": ser.vec(p), "value": ser.num(v)} for p, v in zip(rep.probes, rep.values)],
               "certified": rep.certified}
    _emit(args, ser.dumps(payload))
    if isinstance(sc.body, Polytope):
        _svg(args, ser.polytope_svg(sc.body, rep.probes))
    else:
        _svg(args, ser.cap_svg(sc.body, rep.probes, rep.center))
    return OK if rep.certified else MISMATCH


def cmd_semigroup(args) -> int:
    sc = _scenario(args)
    _need(sc, "semigroup", "semigroup")
    S = DiscreteSemigroup(sc.generators)
    gap = gordan_gap(S, sc.box)
    payload = {"scenario": sc.name, "generators": [list(g) for g in S.generators], "box": sc.box,
               "gap": [list(g) for g in sorted(gap)]}
    _emit(args, ser.dumps(payload))
    if sc.expected_gap is not None and gap != sc.expected_gap:
        return MISMATCH
    return OK


def cmd_fekete(args) -> int:
    sc = _scenario(args)
    _need(sc, "fekete", "fekete")
    r = run_fekete(sc)
    payload = {"scenario": sc.name, "max_level": sc.max_level, "orientation": r.orientation,
               "bound": fmt(r.bound), "estimate": fmt(r.estimate), "linear": r.linear}
    _emit(args, ser.dumps(payload))
    if sc.expected_bound is not None and r.bound != sc.expected_bound:
        return MISMATCH
    return OK


def cmd_golden(args) -> int:
    names = [args.scenario] if args.scenario else sorted(BUILTINS)
    lines, status = [], OK
    for name in names:
        for res in run_golden(builtin(name)):
            lines.append(f"{'PASS' if res.ok else 'FAIL'} {res.name}")
            if not res.ok:
                status = MISMATCH
    _emit(args, "\n".join(lines) + "\n")
    return status


def cmd_properties(args) -> int:
    """Quick seeded spot checks: hull idempotence and envelope domination."""
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.cases):
        pts = [(Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
               for _ in range(rng.randint(3, 9))]
        H = convex_hull(pts)
        if convex_hull(H.vertices).vertex_set() != H.vertex_set():
            failures += 1
        if H.affine_dim == 2:
            samples = [(p, Fraction(rng.randint(0, 9), rng.randint(1, 3))) for p in pts]
            f = concave_envelope(samples, H)
            if any(f(p) < v for p, v in samples):
                failures += 1
    _emit(args, f"seed={args.seed} cases={args.cases} failures={failures}\n")
    return OK if failures == 0 else MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="okounkov", description="Okounkov bodies and functions, computed exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, level=True):
        sp.add_argument("--scenario", help="built-in scenario name")
        sp.add_argument("--config", help="INI scenario file")
        sp.add_argument("--out", help="output file (stdout if omitted)")
        if level:
            sp.add_argument("--max-level", type=int, dest="max_level")
        sp.add_argument("--lambda", dest="lam", help="lambda for the blowup1 scenario (p/q)")
        return sp

    common(sub.add_parser("body", help="Okounkov body at a level budget")).add_argument("--svg")
    fn = common(sub.add_parser("function", help="Okounkov function as a concave envelope"))
    fn.add_argument("--svg")
    fn.add_argument("--t-denominator-bound", type=int, dest="t_denominator_bound")
    common(sub.add_parser("integral", help="integral of the Okounkov function or a lambda scan")).add_argument(
        "--lambda-grid", dest="lambda_grid")
    common(sub.add_parser("jumps", help="jumping numbers at one level"))
    bd = common(sub.add_parser("boundary", help="discontinuity witness of a homothety function"), level=False)
    bd.add_argument("--probes", type=int)
    bd.add_argument("--svg")
    common(sub.add_parser("semigroup", help="Gordan gap of a numerical or affine semigroup"), level=False)
    common(sub.add_parser("fekete", help="Fekete limit of a library sequence"))
    g = sub.add_parser("golden", help="check every built-in scenario against its known answer")
    g.add_argument("--scenario")
    g.add_argument("--out")
    pr = sub.add_parser("properties", help="seeded randomized spot checks")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--cases", type=int, default=200)
    pr.add_argument("--out")
    return p


COMMANDS = {
    "body": cmd_body, "function": cmd_function, "integral": cmd_integral, "jumps": cmd_jumps,
    "boundary": cmd_boundary, "semigroup": cmd_semigroup, "fekete": cmd_fekete, "golden": cmd_golden,
    "properties": cmd_properties,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        return COMMANDS[args.command](args)
    except (ScenarioError, ValueError, TypeError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
